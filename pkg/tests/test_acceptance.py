"""Exit criteria, checked with exact arithmetic; one PASS/FAIL line per sub-check."""

import pytest

from gmlab.acceptance import CRITERIA


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[name.split()[0] for name, _ in CRITERIA])
def test_criterion(name, fn, acceptance_lines):
    checks = fn()
    lines = [c.line(name) for c in checks]
    acceptance_lines.extend(lines)
    for line in lines:
        print(line)
    ok = bool(checks) and all(c.ok for c in checks)
    acceptance_lines.append(f"{'PASS' if ok else 'FAIL'}: {name}")
    assert ok, "\n".join(l for l in lines if l.startswith("[FAIL]"))
