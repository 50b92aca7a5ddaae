"""One test per release criterion; the matrix itself lives in
bairelab.acceptance and is shared with the CLI selftest subcommand."""

import pytest

from bairelab import acceptance


@pytest.fixture(scope="module")
def matrix():
    rows = acceptance.run_all()
    return {r.number: r for r in rows}


@pytest.mark.parametrize("number,title", [(n, t) for n, t, _, _ in acceptance._CRITERIA])
def test_criterion(matrix, number, title):
    row = matrix[number]
    line = f"criterion {number} ({title}): {'PASS' if row.passed else 'FAIL'} — {row.detail}"
    print(line)
    assert row.passed, line
