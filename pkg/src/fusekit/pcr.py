"""Conflict-redistribution rules: WAO, the PCR ladder, and minC.

All rules start from the conjunctive expansion and differ only in where
the empty-landing products go.  Mass conservation is the governing
invariant: combined total plus reported losses equals the product of
the source totals.
"""

import itertools
import math

from .classic import (
    _add,
    _add_landing,
    _common_frame,
    _conflict_operands,
    _expand,
    _intersection_element,
    _result,
    _union_element,
)
from .frame import Element, _disjunctive_labels
from .mass import MassFunction, MassMatrix
from .result import ConflictReport, FusionResult, Partial

_EPS = 1e-12


def _conjunctive_core(frame, sources):
    """Conjunctive landings split into surviving mass and empty products."""
    acc = {}
    conflicts = []
    k12 = 0.0
    for els, p in _expand(sources):
        landing = _intersection_element(els)
        if landing.is_empty:
            k12 += p
            conflicts.append((els, p))
        else:
            _add(acc, landing, p)
    return acc, conflicts, k12


def wao(*sources):
    """Redistribute conflict by column-average weights.

    Each non-empty focal element receives k12 times the average of the
    masses the sources give it.  Whatever weight the averages give the
    empty column cannot be placed and is reported as lost.
    """
    frame = _common_frame(sources)
    acc, conflicts, k12 = _conjunctive_core(frame, sources)
    partials = []
    if k12 > 0.0:
        matrix = MassMatrix(sources)
        s = len(sources)
        lost_w = 0.0
        shares = []
        for el in matrix.columns():
            w = matrix.column_sum(el) / s
            if w <= 0.0:
                continue
            if el.is_empty:
                lost_w += w
            else:
                _add(acc, el, w * k12)
                shares.append((el, w * k12))
        if lost_w > 0.0:
            shares.append((None, lost_w * k12))
        partials.append(
            Partial(
                (), k12, tuple(shares), basis="column averages",
                note="pooled conflict",
            )
        )
    result = _result(frame, acc, partials, "wao", sources)
    warnings = list(result.warnings)
    lost = result.conflict.lost
    if lost > _EPS:
        warnings.append(f"column weight on empty elements lost: {lost:.6f}")
    return FusionResult(
        result.combined,
        ConflictReport(k12, result.conflict.partials),
        rule="wao", warnings=tuple(warnings), sources=result.sources,
    )


def pcr1(*sources):
    """Redistribute conflict proportionally to column sums.

    d12 is the sum of all column sums over non-empty elements; each such
    element receives k12 * column/d12.  Mass the sources put on the
    empty element weights nothing and is divided out through d12 staying
    short, keeping the total at exactly the sources' mass that named a
    non-empty element.
    """
    frame = _common_frame(sources)
    acc, conflicts, k12 = _conjunctive_core(frame, sources)
    partials = []
    warnings = []
    if k12 > 0.0:
        matrix = MassMatrix(sources)
        entries = [
            (el, matrix.column_sum(el))
            for el in matrix.columns()
            if not el.is_empty and matrix.column_sum(el) > 0.0
        ]
        d12 = math.fsum(c for _, c in entries)
        if d12 <= _EPS:
            warnings.append("no non-empty focal columns; conflict lost")
            partials.append(Partial((), k12, ((None, k12),), basis="column sums"))
        else:
            shares = []
            for el, c in entries:
                share = k12 * c / d12
                _add(acc, el, share)
                shares.append((el, share))
            partials.append(
                Partial((), k12, tuple(shares), basis="column sums",
                        note="pooled conflict")
            )
    result = _result(frame, acc, partials, "pcr1", sources)
    return FusionResult(
        result.combined, ConflictReport(k12, result.conflict.partials),
        rule="pcr1", warnings=tuple(warnings), sources=result.sources,
    )


def pcr2(*sources):
    """Like PCR1 but only elements involved in some conflict receive mass."""
    frame = _common_frame(sources)
    acc, conflicts, k12 = _conjunctive_core(frame, sources)
    ignorance = frame.ignorance()
    partials = []
    warnings = []
    if k12 > 0.0:
        involved = set()
        for els, _ in conflicts:
            involved.update(_conflict_operands(els, ignorance))
        matrix = MassMatrix(sources)
        entries = [(el, matrix.column_sum(el)) for el in sorted(
            involved, key=lambda e: e.display)]
        entries = [(el, c) for el, c in entries if c > 0.0]
        e12 = math.fsum(c for _, c in entries)
        if e12 <= _EPS:
            warnings.append("conflict involves only empty operands; lost")
            partials.append(Partial((), k12, ((None, k12),), basis="involved columns"))
        else:
            shares = []
            for el, c in entries:
                share = k12 * c / e12
                _add(acc, el, share)
                shares.append((el, share))
            partials.append(
                Partial((), k12, tuple(shares), basis="involved columns",
                        note="pooled conflict")
            )
    result = _result(frame, acc, partials, "pcr2", sources)
    return FusionResult(
        result.combined, ConflictReport(k12, result.conflict.partials),
        rule="pcr2", warnings=tuple(warnings), sources=result.sources,
    )


def pcr3(*sources):
    """Split each conflicting product by the operands' column sums.

    A conflict between X1..Xs goes to its responsible non-empty
    operands (vacuous operands are exonerated) proportionally to their
    column sums.  When every such column sum is zero the product falls
    back to the union of the operands' disjunctive forms, then to total
    ignorance, and only in a fully degenerate model stays on the empty
    set.
    """
    frame = _common_frame(sources)
    acc, conflicts, k12 = _conjunctive_core(frame, sources)
    matrix = MassMatrix(sources)
    ignorance = frame.ignorance()
    partials = []
    warnings = []
    open_world = 0.0
    for els, p in _expand_conflicts(conflicts):
        entries = []
        seen = set()
        for el in _conflict_operands(els, ignorance):
            if el in seen:
                continue
            seen.add(el)
            c = matrix.column_sum(el)
            if c > 0.0:
                entries.append((el, c))
        total = math.fsum(c for _, c in entries)
        if total > _EPS:
            shares = tuple((el, p * c / total) for el, c in entries)
            for el, share in shares:
                _add(acc, el, share)
            partials.append(Partial(els, p, shares, basis="column sums"))
            continue
        dest = _union_element([el.disjunctive() for el in els])
        note = "all columns empty; to joint disjunctive form"
        if dest.is_empty:
            dest, note = ignorance, note + "; fell back to ignorance"
        if dest.is_empty:
            _add(acc, frame.empty(), p)
            open_world += p
            partials.append(Partial(els, p, ((frame.empty(), p),),
                                    note="model fully degenerate"))
        else:
            _add(acc, dest, p)
            partials.append(Partial(els, p, ((dest, p),), note=note))
    if open_world > 0.0:
        warnings.append(f"open-world mass on the empty set: {open_world:.6f}")
    result = _result(frame, acc, partials, "pcr3", sources)
    return FusionResult(
        result.combined, ConflictReport(k12, result.conflict.partials),
        rule="pcr3", warnings=tuple(warnings), sources=result.sources,
    )


def _expand_conflicts(conflicts):
    # Conflicts already enumerated by the conjunctive core; kept as a
    # hook so the per-product rules iterate one shared shape.
    return conflicts


def pcr4(*sources):
    """Split each conflicting product by the conjunctive result itself.

    The conflict between X and Y goes to them proportionally to
    m12(X) and m12(Y), the masses the conjunctive combination assigns.
    Products whose operands both got zero conjunctive mass fall back to
    the column-sum split.
    """
    frame = _common_frame(sources)
    if len(sources) > 2:
        return _pairwise_fold(pcr4, "pcr4", sources)
    acc, conflicts, k12 = _conjunctive_core(frame, sources)
    m12 = dict(acc)
    matrix = MassMatrix(sources)
    ignorance = frame.ignorance()
    partials = []
    warnings = []
    open_world = 0.0
    for els, p in conflicts:
        entries = []
        seen = set()
        for el in els:
            if el.is_empty or el in seen:
                continue
            seen.add(el)
            c = m12.get(el, 0.0)
            if c > 0.0:
                entries.append((el, c))
        total = math.fsum(c for _, c in entries)
        basis = "conjunctive masses"
        if total <= _EPS:
            entries = []
            seen = set()
            for el in els:
                if el.is_empty or el in seen:
                    continue
                seen.add(el)
                c = matrix.column_sum(el)
                if c > 0.0:
                    entries.append((el, c))
            total = math.fsum(c for _, c in entries)
            basis = "column sums (conjunctive masses all zero)"
        if total > _EPS:
            shares = tuple((el, p * c / total) for el, c in entries)
            for el, share in shares:
                _add(acc, el, share)
            partials.append(Partial(els, p, shares, basis=basis))
            continue
        dest = _union_element([el.disjunctive() for el in els])
        note = "all weights zero; to joint disjunctive form"
        if dest.is_empty:
            dest, note = ignorance, note + "; fell back to ignorance"
        if dest.is_empty:
            _add(acc, frame.empty(), p)
            open_world += p
            partials.append(Partial(els, p, ((frame.empty(), p),),
                                    note="model fully degenerate"))
        else:
            _add(acc, dest, p)
            partials.append(Partial(els, p, ((dest, p),), note=note))
    if open_world > 0.0:
        warnings.append(f"open-world mass on the empty set: {open_world:.6f}")
    result = _result(frame, acc, partials, "pcr4", sources)
    return FusionResult(
        result.combined, ConflictReport(k12, result.conflict.partials),
        rule="pcr4", warnings=tuple(warnings), sources=result.sources,
    )


def pcr5(*sources):
    """Split each conflicting product by the colliding masses themselves.

    For two sources, the product m1(X)*m2(Y) with X and Y disjoint goes
    back to X and Y proportionally to m1(X) and m2(Y).  More sources
    are folded pairwise left to right, which keeps the per-pair
    exactness but is order-dependent; the result carries a warning.
    """
    frame = _common_frame(sources)
    if len(sources) > 2:
        return _pairwise_fold(pcr5, "pcr5", sources)
    m1, m2 = sources
    acc, conflicts, k12 = _conjunctive_core(frame, sources)
    ignorance = frame.ignorance()
    partials = []
    warnings = []
    open_world = 0.0
    for (x1, x2), p in conflicts:
        w1 = m1.mass(x1)
        w2 = m2.mass(x2)
        entries = []
        if not x1.is_empty and w1 > 0.0:
            entries.append((x1, w1))
        if not x2.is_empty and w2 > 0.0:
            entries.append((x2, w2))
        if len(entries) == 2 and entries[0][0] == entries[1][0]:
            entries = [(entries[0][0], entries[0][1] + entries[1][1])]
        total = math.fsum(c for _, c in entries)
        if total > _EPS:
            shares = tuple((el, p * c / total) for el, c in entries)
            for el, share in shares:
                _add(acc, el, share)
            partials.append(Partial((x1, x2), p, shares, basis="own masses"))
            continue
        dest = _union_element([x1.disjunctive(), x2.disjunctive()])
        note = "all weights zero; to joint disjunctive form"
        if dest.is_empty:
            dest, note = ignorance, note + "; fell back to ignorance"
        if dest.is_empty:
            _add(acc, frame.empty(), p)
            open_world += p
            partials.append(Partial((x1, x2), p, ((frame.empty(), p),),
                                    note="model fully degenerate"))
        else:
            _add(acc, dest, p)
            partials.append(Partial((x1, x2), p, ((dest, p),), note=note))
    if open_world > 0.0:
        warnings.append(f"open-world mass on the empty set: {open_world:.6f}")
    result = _result(frame, acc, partials, "pcr5", sources)
    return FusionResult(
        result.combined, ConflictReport(k12, result.conflict.partials),
        rule="pcr5", warnings=tuple(warnings), sources=result.sources,
    )


def _pairwise_fold(rule_fn, rule_name, sources):
    """Left fold of a strictly binary rule over three or more sources."""
    acc_result = rule_fn(sources[0], sources[1])
    for m in sources[2:]:
        acc_result = rule_fn(acc_result.combined, m)
    return FusionResult(
        acc_result.combined, acc_result.conflict, rule=rule_name,
        warnings=acc_result.warnings + (
            f"{rule_name} applied pairwise left to right; result depends on source order",
        ),
        sources=tuple(sources),
    )


# -- minC ---------------------------------------------------------------------

def _intersection_parts(els):
    """Distinct non-empty operands of the conflict's canonical intersection.

    The intersection of the operand expressions is canonicalized first,
    so (A u B) n B collapses to B and contributes the single part B.
    """
    inter = _intersection_element(list(els))
    expr = inter.expr
    frame = inter.frame
    if expr[0] == "and":
        children = expr[1]
    else:
        children = (expr,)
    parts = []
    seen = set()
    for child in children:
        el = Element(frame, frame.eval_atoms(child), child)
        if el.is_empty or el.atoms in seen:
            continue
        seen.add(el.atoms)
        parts.append(el)
    return parts


def _minc_recipients_a(frame, els):
    """Unions of every non-empty subset of the conflict's parts."""
    parts = _intersection_parts(els)
    out = []
    seen = set()
    for r in range(1, len(parts) + 1):
        for combo in itertools.combinations(parts, r):
            el = combo[0] if len(combo) == 1 else _union_element(list(combo))
            if el.is_empty or el.atoms in seen:
                continue
            seen.add(el.atoms)
            out.append(el)
    return out


def _minc_recipients_b(frame, els):
    """Every non-empty union over the hypotheses the conflict involves.

    The involved hypotheses are those in the parts' disjunctive forms;
    the recipients are all 2^k - 1 unions over them, zero-mass ones
    included (they simply draw no share).
    """
    parts = _intersection_parts(els)
    labels = []
    for part in parts:
        for name in _disjunctive_labels(frame, part.expr):
            if name not in labels:
                labels.append(name)
    out = []
    seen = set()
    for r in range(1, len(labels) + 1):
        for combo in itertools.combinations(labels, r):
            members = [frame.label(name) for name in combo]
            el = members[0] if len(members) == 1 else _union_element(members)
            if el.is_empty or el.atoms in seen:
                continue
            seen.add(el.atoms)
            out.append(el)
    return out


def minc(*sources, version="a"):
    """minC conflict redistribution.

    Each conflicting product is reallocated among recipients derived
    from its own structure, proportionally to the conjunctive masses
    those recipients already hold; if none holds anything the product
    is split equally among them.  Version "a" admits unions of the
    conflict's parts as recipients; version "b" admits every union over
    the hypotheses those parts involve.
    """
    if version not in ("a", "b"):
        raise ValueError(f"version must be 'a' or 'b', got {version!r}")
    frame = _common_frame(sources)
    if len(sources) > 2:
        return _pairwise_fold(
            lambda a, b: minc(a, b, version=version), f"minc-{version}", sources
        )
    acc, conflicts, k12 = _conjunctive_core(frame, sources)
    m12 = dict(acc)
    recipients_fn = _minc_recipients_a if version == "a" else _minc_recipients_b
    ignorance = frame.ignorance()
    partials = []
    warnings = []
    open_world = 0.0
    for els, p in conflicts:
        recipients = recipients_fn(frame, els)
        if recipients:
            weights = [(el, m12.get(el, 0.0)) for el in recipients]
            total = math.fsum(w for _, w in weights)
            if total > _EPS:
                shares = tuple((el, p * w / total) for el, w in weights if w > 0.0)
                basis = "conjunctive masses of recipients"
            else:
                share = p / len(recipients)
                shares = tuple((el, share) for el in recipients)
                basis = "equal split (no recipient mass)"
            for el, share in shares:
                _add(acc, el, share)
            partials.append(Partial(els, p, shares, basis=basis))
            continue
        dest = _union_element([el.disjunctive() for el in els])
        note = "no admissible recipients; to joint disjunctive form"
        if dest.is_empty:
            dest, note = ignorance, note + "; fell back to ignorance"
        if dest.is_empty:
            _add(acc, frame.empty(), p)
            open_world += p
            partials.append(Partial(els, p, ((frame.empty(), p),),
                                    note="model fully degenerate"))
        else:
            _add(acc, dest, p)
            partials.append(Partial(els, p, ((dest, p),), note=note))
    if open_world > 0.0:
        warnings.append(f"open-world mass on the empty set: {open_world:.6f}")
    result = _result(frame, acc, partials, f"minc-{version}", sources)
    return FusionResult(
        result.combined, ConflictReport(k12, result.conflict.partials),
        rule=f"minc-{version}", warnings=tuple(warnings), sources=result.sources,
    )
