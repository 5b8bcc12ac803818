"""Randomized invariants: commutativity, conservation, neutrality, axioms."""

import math

from hypothesis import assume, given, settings, strategies as st

from fusekit import (
    Frame,
    MassFunction,
    RuleError,
    TotalConflictError,
    cautious_commonality_min,
    conjunctive,
    degree_intersection,
    degree_union,
    dempster,
    disjunctive,
    dsm_classic,
    dsm_hybrid,
    dubois_prade,
    exclusive_disjunctive,
    improved_rules,
    inagaki,
    minc,
    murphy_average,
    pcr1,
    pcr2,
    pcr3,
    pcr4,
    pcr5,
    quasi_associative_combine,
    smets_tbm,
    tconorm_fusion,
    tnorm_fusion,
    uft_combine,
    wao,
    weighted_operator,
    yager,
    zhang_center,
)
from fusekit.special import TCONORMS, TNORMS

import oracles

settings.register_profile(
    "suite", derandomize=True, deadline=None, max_examples=60
)
settings.load_profile("suite")

FRAMES = (
    Frame(("A", "B")),
    Frame.shafer(("A", "B")),
    Frame(("A", "B", "C")),
    Frame.shafer(("A", "B", "C")),
)
ELEMENTS = {
    i: [el for el in f.superpower_set() if not el.is_empty]
    for i, f in enumerate(FRAMES)
}
SHAFER_IDS = (1, 3)


@st.composite
def bba_on(draw, frame_id):
    frame = FRAMES[frame_id]
    els = draw(st.lists(
        st.sampled_from(ELEMENTS[frame_id]), min_size=1, max_size=4, unique=True,
    ))
    weights = draw(st.lists(
        st.integers(min_value=1, max_value=100),
        min_size=len(els), max_size=len(els),
    ))
    total = sum(weights)
    return MassFunction(frame, {el: w / total for el, w in zip(els, weights)})


@st.composite
def bba_pair(draw, frame_ids=tuple(range(len(FRAMES)))):
    fid = draw(st.sampled_from(frame_ids))
    return draw(bba_on(fid)), draw(bba_on(fid))


@st.composite
def bayesian_pair(draw):
    fid = draw(st.sampled_from(SHAFER_IDS))
    frame = FRAMES[fid]
    singles = [frame.label(nm) for nm in frame.names]

    def one():
        weights = draw(st.lists(
            st.integers(min_value=0, max_value=100),
            min_size=len(singles), max_size=len(singles),
        ))
        assume(sum(weights) > 0)
        t = sum(weights)
        return MassFunction(frame, {el: w / t for el, w in zip(singles, weights)})

    return one(), one()


def combined_of(out):
    return out.combined if hasattr(out, "combined") else out


_COMMUTING = (
    conjunctive, disjunctive, exclusive_disjunctive, dsm_classic, smets_tbm,
    dempster, yager, dubois_prade, dsm_hybrid, murphy_average, wao,
    pcr1, pcr2, pcr3, pcr4, pcr5,
    lambda a, b: minc(a, b, version="a"),
    lambda a, b: minc(a, b, version="b"),
)


@given(bba_pair())
def test_binary_rules_commute(pair):
    m1, m2 = pair
    for fn in _COMMUTING:
        try:
            left = combined_of(fn(m1, m2))
            right = combined_of(fn(m2, m1))
        except (TotalConflictError, RuleError):
            continue
        assert oracles.delta(oracles.plain(left), oracles.plain(right)) < 1e-12


@given(bba_pair(frame_ids=SHAFER_IDS))
def test_normalizing_rules_commute(pair):
    m1, m2 = pair
    fns = [
        lambda a, b: zhang_center(a, b, degree="product"),
        lambda a, b: zhang_center(a, b, degree="union"),
        cautious_commonality_min,
    ]
    fns += [lambda a, b, k=k: tnorm_fusion(a, b, kind=k) for k in TNORMS]
    fns += [lambda a, b, k=k: tconorm_fusion(a, b, kind=k) for k in TCONORMS]
    fns += [lambda a, b, s=s: improved_rules(a, b, base=s)
            for s in ("disjunctive", "dsmc", "dp")]
    for fn in fns:
        try:
            left = combined_of(fn(m1, m2))
            right = combined_of(fn(m2, m1))
        except (TotalConflictError, RuleError):
            continue
        assert oracles.delta(oracles.plain(left), oracles.plain(right)) < 1e-12


# Rules that keep or relocate every unit of mass: the combined total
# plus whatever the ledger declares lost must be one.
_CONSERVING = (
    conjunctive, disjunctive, exclusive_disjunctive, dsm_classic, smets_tbm,
    yager, dubois_prade, dsm_hybrid, murphy_average, wao,
    pcr1, pcr2, pcr3, pcr4, pcr5,
    lambda a, b: minc(a, b, version="a"),
    lambda a, b: minc(a, b, version="b"),
    lambda a, b: uft_combine((a, b)),
)


@given(bba_pair())
def test_mass_is_conserved_or_declared_lost(pair):
    m1, m2 = pair
    for fn in _CONSERVING:
        try:
            out = fn(m1, m2)
        except (TotalConflictError, RuleError):
            continue
        if hasattr(out, "conflict"):
            total = out.combined.total + out.conflict.lost
        else:
            total = out.total
        assert abs(total - 1.0) < 1e-9


@given(bba_pair())
def test_normalizing_rules_return_unit_total(pair):
    m1, m2 = pair
    fns = [dempster,
           lambda a, b: zhang_center(a, b, degree="product"),
           lambda a, b: zhang_center(a, b, degree="union"),
           lambda a, b: tnorm_fusion(a, b, kind="algebraic"),
           lambda a, b: tconorm_fusion(a, b, kind="max"),
           lambda a, b: improved_rules(a, b, base="dsmc"),
           lambda a, b: improved_rules(a, b, base="dp")]
    for fn in fns:
        try:
            out = fn(m1, m2)
        except (TotalConflictError, RuleError):
            continue
        assert abs(out.combined.total - 1.0) < 1e-9


@given(bba_pair(frame_ids=SHAFER_IDS))
def test_cautious_conserves_signed_total(pair):
    m1, m2 = pair
    out = cautious_commonality_min(m1, m2)
    if out.signed_masses is not None:
        total = math.fsum(out.signed_masses.values())
    else:
        total = out.combined.total
    assert abs(total - 1.0) < 1e-9


_VBA_NEUTRAL = (
    conjunctive, dsm_classic, dsm_hybrid, dempster, yager, dubois_prade,
    pcr2, pcr3, pcr5,
    lambda *ss: minc(*ss, version="a"),
    lambda *ss: minc(*ss, version="b"),
)


@given(bba_pair())
def test_vacuous_source_changes_nothing(pair):
    m1, m2 = pair
    vac = MassFunction.vacuous(m1.frame)
    for fn in _VBA_NEUTRAL:
        try:
            base = combined_of(fn(m1, m2))
            padded = combined_of(fn(m1, m2, vac))
        except (TotalConflictError, RuleError):
            continue
        assert oracles.delta(oracles.plain(base), oracles.plain(padded)) < 1e-12


def test_wao_and_pcr1_are_not_vacuous_neutral():
    # Column statistics see the vacuous source's ignorance mass, so
    # these two rules shift conflict toward ignorance when one joins.
    f = Frame.shafer(("A", "B"))
    m1 = MassFunction(f, {"A": 0.6, "B": 0.4})
    m2 = MassFunction(f, {"A": 0.3, "B": 0.7})
    vac = MassFunction.vacuous(f)
    for fn in (wao, pcr1):
        base = fn(m1, m2).combined
        padded = fn(m1, m2, vac).combined
        assert oracles.delta(oracles.plain(base), oracles.plain(padded)) > 1e-3


@given(st.data())
def test_dempster_is_associative(data):
    fid = data.draw(st.sampled_from(range(len(FRAMES))))
    m1 = data.draw(bba_on(fid))
    m2 = data.draw(bba_on(fid))
    m3 = data.draw(bba_on(fid))
    try:
        direct = dempster(m1, m2, m3).combined
        staged = dempster(dempster(m1, m2).combined, m3).combined
    except TotalConflictError:
        assume(False)
    assert oracles.delta(oracles.plain(direct), oracles.plain(staged)) < 1e-9


@given(st.data())
def test_incremental_combining_matches_direct(data):
    fid = data.draw(st.sampled_from(range(len(FRAMES))))
    stream = [data.draw(bba_on(fid)) for _ in range(3)]
    for rule, direct in (
        ("yager", yager), ("smets", smets_tbm), ("pcr1", pcr1),
        ("dubois-prade", dubois_prade),
    ):
        try:
            state, res = quasi_associative_combine(stream[0], stream[1], rule=rule)
            state, res = quasi_associative_combine(state, stream[2], rule=rule)
            ref = direct(*stream)
        except RuleError:
            continue
        assert oracles.delta(
            oracles.plain(res.combined), oracles.plain(ref.combined)
        ) < 1e-12


unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


@given(unit, unit, unit)
def test_tnorm_axioms(x, y, z):
    for t in TNORMS.values():
        assert t(x, y) == t(y, x)
        assert abs(t(t(x, y), z) - t(x, t(y, z))) < 1e-12
        # The bounded norm computes x+1-1, so identity holds to an ulp.
        assert abs(t(x, 1.0) - x) < 1e-12
    for s in TCONORMS.values():
        assert s(x, y) == s(y, x)
        assert abs(s(s(x, y), z) - s(x, s(y, z))) < 1e-12
        assert abs(s(x, 0.0) - x) < 1e-12


@given(unit, unit, unit)
def test_norms_are_monotone(x, y, z):
    lo, hi = min(x, y), max(x, y)
    for t in TNORMS.values():
        assert t(lo, z) <= t(hi, z) + 1e-15
    for s in TCONORMS.values():
        assert s(lo, z) <= s(hi, z) + 1e-15


@given(st.data())
def test_intersection_and_union_degrees_are_complementary(data):
    fid = data.draw(st.sampled_from(range(len(FRAMES))))
    els = ELEMENTS[fid]
    a = data.draw(st.sampled_from(els))
    b = data.draw(st.sampled_from(els))
    d = degree_intersection(a, b)
    assert 0.0 <= d <= 1.0
    assert degree_intersection(a, b) + degree_union(a, b) == 1.0


@given(st.data())
def test_belief_bounds(data):
    fid = data.draw(st.sampled_from(range(len(FRAMES))))
    m = data.draw(bba_on(fid))
    el = data.draw(st.sampled_from(ELEMENTS[fid]))
    bel, pl = m.bel(el), m.pl(el)
    assert m.bel_d(el) <= bel + 1e-12
    assert bel <= pl + 1e-12
    assert m.pl_d(el) <= pl + 1e-12


@given(bba_on(1))
def test_cautious_idempotence(m):
    out = cautious_commonality_min(m, m)
    if out.signed_masses is not None:
        return
    assert oracles.delta(oracles.plain(out.combined), oracles.plain(m)) < 1e-9


@given(bba_pair(frame_ids=SHAFER_IDS))
def test_cautious_takes_exact_commonality_minimum(pair):
    m1, m2 = pair
    out = cautious_commonality_min(m1, m2)
    assume(out.signed_masses is None)
    frame = m1.frame
    for el in ELEMENTS[1 if frame.n == 2 else 3]:
        want = min(m1.q(el), m2.q(el))
        assert abs(out.combined.q(el) - want) < 1e-9


@given(bba_pair())
def test_weighted_operator_endpoints(pair):
    m1, m2 = pair
    frame = m1.frame
    empty_expr = f"{frame.names[0]}&~{frame.names[0]}"
    wo_smets = weighted_operator(m1, m2, weights={empty_expr: 1.0})
    ref = smets_tbm(m1, m2)
    assert oracles.delta(
        oracles.plain(wo_smets.combined), oracles.plain(ref.combined)
    ) < 1e-12
    ignorance = frame.ignorance()
    wo_yager = weighted_operator(m1, m2, weights={ignorance: 1.0})
    ref = yager(m1, m2)
    assert oracles.delta(
        oracles.plain(wo_yager.combined), oracles.plain(ref.combined)
    ) < 1e-12


@given(bba_pair())
def test_inagaki_endpoints(pair):
    m1, m2 = pair
    out0 = inagaki(m1, m2, p=0.0)
    ref = yager(m1, m2)
    assert oracles.delta(
        oracles.plain(out0.combined), oracles.plain(ref.combined)
    ) < 1e-12


@given(bayesian_pair())
def test_inagaki_reaches_dempster_on_bayesian_sources(pair):
    m1, m2 = pair
    product = conjunctive(m1, m2)
    k12 = product.conflict.k12
    assume(k12 < 1.0 - 1e-6)
    # Bayesian sources put no product mass on total ignorance, so the
    # upper parameter bound collapses the rule to Dempster's.
    out = inagaki(m1, m2, p=1.0 / (1.0 - k12))
    ref = dempster(m1, m2)
    assert oracles.delta(
        oracles.plain(out.combined), oracles.plain(ref.combined)
    ) < 1e-9


@given(bayesian_pair())
def test_zhang_union_is_dempster_for_bayesian_shafer(pair):
    m1, m2 = pair
    try:
        out = zhang_center(m1, m2, degree="union")
        ref = dempster(m1, m2)
    except TotalConflictError:
        assume(False)
    assert oracles.delta(
        oracles.plain(out.combined), oracles.plain(ref.combined)
    ) < 1e-12
