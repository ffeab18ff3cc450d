import os
import sys

sys.path.insert(0, os.path.dirname(__file__))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get('test_acceptance')
    results = getattr(mod, 'RESULTS', None)
    if not results:
        return
    terminalreporter.section('acceptance criteria')
    for cid in sorted(results, key=lambda c: (int(c.rstrip('ab')), c)):
        ok, detail = results[cid]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {cid}: {detail}")
