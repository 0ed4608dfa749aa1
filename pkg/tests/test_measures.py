import math

import pytest
from hypothesis import assume, given, strategies as st

from oracles import ou_closed_form
from unithood.counts import CountSnapshot, InvalidSampleSpaceError
from unithood.measures import (
    CValueInput, OuConfig, UhThresholds, UndefinedMeasureError, c_value, decide_merge_ou,
    independence_ratio, lexical_independence, mutual_information, odds_global, odds_local,
    odds_of_unithood, uh_from_measures, unithood_uh,
)


def snap(n_s, n_xy, N, n_x=None, n_y=None):
    return CountSnapshot(n_x=n_xy if n_x is None else n_x, n_y=n_xy if n_y is None else n_y,
                         n_s=n_s, n_xy=n_xy, N=N)


@st.composite
def snapshots(draw, max_n=10**6):
    N = draw(st.integers(1, max_n))
    n_x = draw(st.integers(0, N))
    n_y = draw(st.integers(0, N))
    n_xy = draw(st.integers(0, min(n_x, n_y)))
    n_s = draw(st.integers(0, n_xy))
    return CountSnapshot(n_x, n_y, n_s, n_xy, N)


# -- mutual information -----------------------------------------------------

def test_mi_examples():
    assert mutual_information(CountSnapshot(5, 5, 0, 5, 10)) == pytest.approx(1.0, abs=1e-12)
    assert mutual_information(CountSnapshot(4, 4, 0, 2, 8)) == 0.0
    assert mutual_information(CountSnapshot(3, 3, 0, 0, 10)) == -math.inf


def test_mi_joint_source():
    s = CountSnapshot(5, 5, 1, 5, 10)
    assert mutual_information(s, "n_s") == pytest.approx(math.log2(0.1 / 0.25))


def test_mi_undefined_marginal():
    with pytest.raises(UndefinedMeasureError):
        mutual_information(CountSnapshot(0, 5, 0, 0, 10))


@given(snapshots())
def test_mi_symmetric(s):
    assume(s.n_x > 0 and s.n_y > 0)
    swapped = CountSnapshot(s.n_y, s.n_x, s.n_s, s.n_xy, s.N)
    assert mutual_information(s) == mutual_information(swapped)


@given(st.integers(1, 1000), st.integers(1, 1000), st.integers(1, 1000))
def test_mi_zero_under_independence(a, b, k):
    # n_x = a*k, n_y = b*k, N = a*b*k, n_xy = k  =>  n_xy * N == n_x * n_y
    s = CountSnapshot(a * k, b * k, 0, k, a * b * k)
    assert abs(mutual_information(s)) <= 1e-12


# -- lexical independence / ratio -------------------------------------------

def test_lexical_independence():
    assert lexical_independence(1006, 6) == pytest.approx(3.0)
    assert lexical_independence(6, 6) == 0
    assert lexical_independence(7, 6) == 0
    assert lexical_independence(3, 6) == 0


def test_independence_ratio():
    assert independence_ratio(3, 3) == 1.0
    assert independence_ratio(4.2, 3.0) == pytest.approx(1.4)
    with pytest.raises(UndefinedMeasureError):
        independence_ratio(3, 0)


# -- UH ---------------------------------------------------------------------

def test_uh_default_thresholds():
    assert UhThresholds() == UhThresholds(0.9, 0.02, 6, 1.35, 0.93)
    with pytest.raises(ValueError):
        UhThresholds(mi_plus=0.1, mi_minus=0.2)


def test_uh_from_measures_examples():
    assert uh_from_measures(0.95, 0, 0)
    assert uh_from_measures(0.5, 7, 6.5)
    assert not uh_from_measures(0.01, 7, 7)
    assert not uh_from_measures(0.5, 7, 5)
    assert not uh_from_measures(0.5, 9, 6)  # IDR = 1.5


def test_uh_branch_one_on_counts():
    s = CountSnapshot(n_x=100, n_y=100, n_s=5, n_xy=19, N=1000)
    d = unithood_uh(s)
    assert d.merge and d.score > 0.9 and d.measure_name == "uh"


def test_uh_branch_two_on_counts():
    n_s = 100
    n_x = 10**7 + n_s                     # ID(a_x, s) = 7
    n_y = round(10**6.5) + n_s            # ID(a_y, s) ~ 6.5
    N = 10**9
    n_xy = round(2**0.5 * n_x * n_y / N)  # MI ~ 0.5
    s = CountSnapshot(n_x, n_y, n_s, n_xy, N)
    d = unithood_uh(s)
    assert 0.02 <= d.score <= 0.9
    assert d.merge
    # same counts but a_y not independent enough of s
    assert not unithood_uh(CountSnapshot(n_x, 10**5, n_s, n_xy // 100, N)).merge


def test_uh_reject_on_counts():
    d = unithood_uh(CountSnapshot(100, 100, 5, 10, 1000))  # MI = 0
    assert not d.merge


def test_uh_undefined_pieces_fail_quietly():
    assert not unithood_uh(CountSnapshot(0, 5, 0, 0, 10)).merge
    # mid-range MI, ID_y = 0 would make IDR undefined; ID_T already rejects
    t = UhThresholds(id_t=0)
    s = CountSnapshot(n_x=1000, n_y=5, n_s=5, n_xy=5, N=1500)
    assert 0.02 <= mutual_information(s) <= 0.9
    assert not unithood_uh(s, t).merge


@given(snapshots())
def test_uh_deterministic(s):
    assert unithood_uh(s).merge == unithood_uh(s).merge


# -- odds -------------------------------------------------------------------

def test_odds_local():
    assert odds_local(snap(3, 4, 10)) == 3.0
    assert odds_local(snap(7, 7, 10)) == 1
    assert odds_local(snap(0, 5, 10)) == 0


def test_odds_global():
    assert odds_global(snap(3, 4, 10)) == pytest.approx(0.428571, abs=1e-6)
    assert odds_global(snap(0, 4, 10)) == 0
    assert odds_global(snap(5, 5, 5)) == math.inf


def test_ou_examples():
    assert odds_of_unithood(snap(3, 4, 10)) == pytest.approx(0.10914, abs=1e-5)
    assert odds_of_unithood(snap(3, 4, 10)) == pytest.approx(ou_closed_form(3, 4, 10), abs=1e-12)
    assert odds_of_unithood(snap(0, 4, 10)) == -math.inf
    assert odds_of_unithood(snap(2, 2, 10)) == pytest.approx(math.log10(2 / 8), abs=1e-12)
    assert odds_of_unithood(snap(2, 2, 10)) == pytest.approx(-0.60206, abs=1e-5)


def test_ou_extremes():
    assert odds_of_unithood(snap(5, 5, 5)) == math.inf
    assert odds_of_unithood(snap(0, 0, 5)) == -math.inf
    with pytest.raises(InvalidSampleSpaceError):
        odds_of_unithood(CountSnapshot(0, 0, 0, 0, 0))


def test_ou_config_validation():
    with pytest.raises(ValueError):
        OuConfig(log_base=1)
    with pytest.raises(ValueError):
        OuConfig(mi_joint_source="n_z")


@given(snapshots())
def test_ou_matches_closed_form(s):
    assume(0 < s.n_s < s.N)
    assert odds_of_unithood(s) == pytest.approx(ou_closed_form(s.n_s, s.n_xy, s.N),
                                                rel=1e-9, abs=1e-9)


@given(snapshots())
def test_odds_local_independent_of_N(s):
    scaled = CountSnapshot(s.n_x, s.n_y, s.n_s, s.n_xy, 10 * s.N)
    assert odds_local(s) == odds_local(scaled)


@given(snapshots(), st.floats(1.01, 1000))
def test_ou_base_change(s, base):
    ou10 = odds_of_unithood(s)
    oub = odds_of_unithood(s, OuConfig(log_base=base))
    if math.isfinite(ou10):
        assert oub == pytest.approx(ou10 / math.log10(base), rel=1e-9, abs=1e-9)
    else:
        assert oub == ou10


@given(st.integers(2, 10**6), st.data())
def test_ou_monotone_in_interior(N, data):
    """Away from the n_s = n_xy special case, OU rises with n_s and falls with n_xy."""
    n_xy = data.draw(st.integers(2, N))
    n_s = data.draw(st.integers(0, n_xy - 2))
    base = snap(n_s, n_xy, N)
    assert odds_of_unithood(snap(n_s + 1, n_xy, N)) >= odds_of_unithood(base)
    if n_xy < N:
        assert odds_of_unithood(snap(n_s, n_xy + 1, N)) <= odds_of_unithood(base)
    assert odds_of_unithood(snap(n_s, n_xy, N + 1)) <= odds_of_unithood(base)


def test_ou_drops_at_exclusive_boundary():
    # n_s = n_xy switches the local odds to exactly 1
    assert odds_of_unithood(snap(10, 10, 100)) < odds_of_unithood(snap(9, 10, 100))


# -- decisions --------------------------------------------------------------

def test_decide_merge_ou():
    assert decide_merge_ou(0.109, -8.39).merge
    assert not decide_merge_ou(-math.inf, -8.39).merge
    assert decide_merge_ou(-8.39, -8.39).merge
    assert decide_merge_ou(math.inf, 1e9).merge
    assert decide_merge_ou(0.5).measure_name == "ou"


# -- C-value ----------------------------------------------------------------

def test_c_value_examples():
    assert c_value(CValueInput("a b c d".split(), 10, g=4)) == 20
    longer = [("x a b".split(), 2), ("a b y".split(), 4)]
    assert c_value(CValueInput("a b".split(), 6, longer, g=4)) == 3
    assert c_value(CValueInput(["a"], 100, g=4)) == 0


def test_c_value_errors():
    with pytest.raises(ValueError):
        c_value(CValueInput("a b c".split(), 5, g=2))
    with pytest.raises(ValueError):
        CValueInput("a b".split(), 5, [("a b".split(), 3)], g=3)


@given(st.integers(1, 6), st.integers(0, 10**6))
def test_c_value_branches_agree_without_longer(n, f):
    a = [f"w{i}" for i in range(n)]
    assert c_value(CValueInput(a, f, g=n)) == c_value(CValueInput(a, f, g=n + 3))
