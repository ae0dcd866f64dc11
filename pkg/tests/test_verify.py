"""The golden-case replay must pass wholesale; it backs the CLI verify command."""

from codim2.verify import run_all


def test_all_golden_checks_pass():
    results = run_all()
    failures = [(r.name, r.detail) for r in results if not r.ok]
    assert not failures, failures
    assert len(results) >= 20
