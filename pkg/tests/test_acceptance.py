"""The eight acceptance criteria, one test each.

Every test prints the criterion's single status line (visible under
pytest -s or on failure) and asserts the pass flag.  Seeds, sample
counts and time budgets live in the acceptance module itself, so the
full criteria run here, not reduced stand-ins.
"""

from ncmoduli import acceptance


def _check(result):
    print(result.line())
    assert result.passed, result.line()


def test_criterion_1():
    _check(acceptance.criterion_1())


def test_criterion_2():
    _check(acceptance.criterion_2())


def test_criterion_3():
    _check(acceptance.criterion_3())


def test_criterion_4():
    _check(acceptance.criterion_4())


def test_criterion_5():
    _check(acceptance.criterion_5())


def test_criterion_6():
    _check(acceptance.criterion_6())


def test_criterion_7():
    _check(acceptance.criterion_7())


def test_criterion_8():
    _check(acceptance.criterion_8())
