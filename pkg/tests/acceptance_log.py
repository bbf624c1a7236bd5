"""PASS/FAIL lines collected by the acceptance suite, echoed in the terminal summary."""
LINES = []


def record(number: int, title: str, ok: bool, detail: str, seconds: float) -> str:
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title} ({seconds:.1f} s) - {detail}"
    LINES.append(line)
    print(line)
    return line
