from __future__ import annotations

import pytest
from conftest import FP

from quadres.complex import Entry, FreeComplex, from_diagram, verify_all
from quadres.diagram import build
from quadres.homology import exactness_report, h0_check
from quadres.oracles import BINARY, FIBONACCI, OFamily, OracleKind, block_diag, compare, oracle_complex


def fib_ranks(L):
    r = [1, 1]
    while len(r) < L + 1:
        r.append(r[-1] + r[-2])
    return r[: L + 1]


def test_oracle_ranks():
    assert list(oracle_complex(FIBONACCI, 7).ranks) == [1, 1, 2, 3, 5, 8, 13, 21]
    assert list(oracle_complex(BINARY, 5).ranks) == [1, 1, 2, 4, 8, 16]
    assert list(oracle_complex(OFamily(3), 3).ranks) == [1, 1, 3, 7]


def test_rank_recurrences():
    r = oracle_complex(FIBONACCI, 12).ranks
    assert all(r[n + 1] == r[n] + r[n - 1] for n in range(1, 12))
    r = oracle_complex(BINARY, 12).ranks
    assert all(r[n] == 2 * r[n - 1] for n in range(2, 13))


def test_fibonacci_low_matrices():
    cx = oracle_complex(FIBONACCI, 3)
    text = [[repr(x) for x in row] for row in cx.matrix(3)]
    assert text == [["x1", "x3", "0"], ["0", "-1*x2", "x1"]]
    assert [[repr(x) for x in row] for row in cx.matrix(2)] == [["x2", "x3"]]


def test_block_diag():
    a = (1, 2, ())
    b = (2, 1, ())
    assert block_diag(a, b)[:2] == (3, 3)


@pytest.mark.parametrize("kind", [FIBONACCI, BINARY, OFamily(2), OFamily(3), OFamily(4)])
def test_oracles_are_resolutions(kind):
    cx = oracle_complex(kind, 7)
    assert all(verify_all(cx))
    assert exactness_report(cx, 10, FP).consistent
    assert h0_check(cx, 10)


@pytest.mark.parametrize("kind,levels", [(FIBONACCI, 8), (BINARY, 8), (OFamily(2), 6), (OFamily(3), 6), (OFamily(4), 6)])
def test_build_matches_oracle(kind, levels):
    built = from_diagram(build(kind.spec(), 1, levels))
    verdict = compare(built, oracle_complex(kind, levels), levels + 4, FP)
    assert verdict, verdict.reasons


def test_fibonacci_vs_binary_unequal():
    verdict = compare(oracle_complex(FIBONACCI, 5), oracle_complex(BINARY, 5), 8, FP)
    assert not verdict
    assert any("rank differs at level 3: 3 vs 4" in r for r in verdict.reasons)


def test_compare_rejects_non_complex():
    good = oracle_complex(FIBONACCI, 4)
    # x3 -> x1 in the column (x3, -x2) of d_3 keeps every graded rank, so
    # only the d o d check tells the two apart
    entries = [
        Entry(e.row, e.col, 1, 1) if (e.row, e.col) == (0, 1) else e
        for e in good.differentials[2]
    ]
    diffs = good.differentials[:2] + (tuple(entries),) + good.differentials[3:]
    bad = FreeComplex(good.spec, good.ranks, diffs)
    assert not all(verify_all(bad))
    verdict = compare(good, bad, 8, FP)
    assert not verdict
    assert verdict.reasons == ["oracle is not a complex: d o d != 0 at level 3"]


def test_kind_parsing():
    assert OracleKind.parse("fibonacci") == FIBONACCI
    assert OracleKind.parse("o:3") == OFamily(3)
    for text in ("o:1", "nope"):
        with pytest.raises(ValueError):
            OracleKind.parse(text)
    with pytest.raises(ValueError):
        oracle_complex(FIBONACCI, 0)
