"""Peterson classes: multiplicities, Schubert expansions, structure constants.

Everything is exact.  Subsets are bitmasks ordered by ``subset_key`` (size,
then members), which refines inclusion, so the localization matrix ``C`` of
the Peterson classes is upper triangular and every solve is a forward
substitution without pivoting.

Notation used below: ``p_I`` is the pullback of the Schubert class of the
chosen Coxeter element ``v_I``; ``w_I`` is the longest element of ``W_I``;
``m(v_I)`` is the intersection multiplicity at ``w_I``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    GroupTooLarge,
    InternalInconsistency,
    NonIntegralExpansion,
    NotCoxeter,
    VerificationFailure,
)
from .localization import LocalizationTable, billey_coefficient
from .rootsystem import (
    Root,
    RootSystem,
    all_subsets,
    cartan_determinant,
    exponents,
    highest_root_product,
    members,
    subset_key,
    subsets_of,
)
from .scalars import ZERO, GradedScalar
from .weyl import DEFAULT_CAP, WeylElement, format_word, is_coxeter, weyl_group


def _check_coxeter(v: WeylElement, I: int) -> None:
    if not is_coxeter(v, I):
        raise NotCoxeter(
            f"{v!r} is not a Coxeter element of nodes {[i + 1 for i in members(I)]}"
        )


# ---------------------------------------------------------------- multiplicities

def multiplicity(rs: RootSystem, I: int, v: WeylElement) -> int:
    """Intersection multiplicity ``m(v)`` of ``w_I`` in ``X^v`` and ``P_I``.

    Equal to the coefficient ``b`` of ``sigma_v|_{w_I} = b t^|I|`` divided by
    the product of the exponents of ``I``.  The reduced word of ``w_I`` only
    uses letters of ``I``, so the computation already takes place inside the
    parabolic subsystem.
    """
    _check_coxeter(v, I)
    w = weyl_group(rs).longest_element(I)
    b = billey_coefficient(v, w)
    denom = math.prod(exponents(rs, I))
    q, r = divmod(b, denom)
    if r or q <= 0:
        raise InternalInconsistency(f"restriction {b} not a positive multiple of {denom}")
    return q


def normal_roots(rs: RootSystem, I: int, v: WeylElement) -> list[Root]:
    """Positive roots ``a`` of ``I`` with ``s_a`` not below ``v * w_I`` in Bruhat order."""
    _check_coxeter(v, I)
    g = weyl_group(rs)
    top = v * g.longest_element(I)
    return [beta for beta in rs.roots_in(I) if not g.bruhat_leq(g.reflection(beta), top)]


def multiplicity_via_heights(rs: RootSystem, I: int, v: WeylElement) -> Fraction:
    """Product of heights of ``normal_roots`` over the product of exponents.

    Equals :func:`multiplicity` when the Schubert variety ``X^v`` is smooth at
    ``w_I`` (true for the increasing Coxeter elements of classical types);
    outside that case it is only a heuristic and nothing is asserted here.
    """
    hts = math.prod(sum(beta) for beta in normal_roots(rs, I, v))
    return Fraction(hts, math.prod(exponents(rs, I)))


@dataclass(frozen=True)
class ConjectureResult:
    """Closed forms for ``m(v)`` next to the value from localization.

    ``via_highest_root`` is the literal ``|R(v)| prod a_alpha``; the identity
    behind it needs a connected diagram, so ``via_components`` multiplies the
    same expression over connected components instead.
    """

    I: int
    word: tuple[int, ...]
    connected: bool
    multiplicity: int
    reduced_words: int
    highest_root_product: int
    cartan_determinant: int
    group_order: int | None
    via_group_order: Fraction | None
    via_highest_root: int
    via_components: int

    @property
    def agree(self) -> bool:
        """Literal agreement of all computed values."""
        vals = {Fraction(self.multiplicity), Fraction(self.via_highest_root)}
        if self.via_group_order is not None:
            vals.add(self.via_group_order)
        return len(vals) == 1

    @property
    def agree_componentwise(self) -> bool:
        ok = self.via_components == self.multiplicity
        if self.via_group_order is not None:
            ok = ok and self.via_group_order == self.multiplicity
        return ok


def conjecture_multiplicity(rs: RootSystem, I: int, v: WeylElement,
                            cap: int = DEFAULT_CAP) -> ConjectureResult:
    """Compare ``m(v)`` with ``|R(v)| |W_I| / (|I|! det C_I)`` and ``|R(v)| prod a_alpha``.

    ``|W_I|`` comes from an actual enumeration; when that exceeds ``cap`` the
    first closed form is skipped (``None``).
    """
    _check_coxeter(v, I)
    g = weyl_group(rs)
    m = multiplicity(rs, I, v)
    nred = g.count_reduced_words(v)
    det = cartan_determinant(rs, I)
    hrp = highest_root_product(rs, I)
    try:
        order = len(g.enumerate(cap, within=I))
    except GroupTooLarge:
        order = None
    first = None
    if order is not None:
        first = Fraction(nred * order, math.factorial(I.bit_count()) * det)
    comps = rs.components(I)
    per_comp = 1
    for comp in comps:
        # letters of one component commute with the rest, so this is the factor v_j
        vj = g.from_word([i for i in v.word if (comp >> i) & 1])
        per_comp *= g.count_reduced_words(vj) * highest_root_product(rs, comp)
    return ConjectureResult(I, v.word, len(comps) <= 1, m, nred, hrp, det, order, first,
                            nred * hrp, per_comp)


# ---------------------------------------------------------------- basis

class PetersonBasis:
    """A choice of Coxeter element ``v_I`` for every subset ``I``, with memo tables."""

    def __init__(self, rs: RootSystem, choices: Mapping[int, WeylElement] | None = None,
                 store=None):
        self.rs = rs
        self.group = g = weyl_group(rs)
        self.subsets = all_subsets(rs.rank)
        self.coxeter = {I: g.default_coxeter(I) for I in self.subsets}
        for I, v in (choices or {}).items():
            _check_coxeter(v, I)
            self.coxeter[I] = v
        self.table = LocalizationTable(rs, store=store)
        self._mult: dict[int, int] = {}
        self._solutions: dict = {}

    def __repr__(self):
        return f"PetersonBasis({self.rs.name})"

    def fixed_point(self, I: int) -> WeylElement:
        return self.group.longest_element(I)

    def restrict(self, u: WeylElement, J: int) -> GradedScalar:
        """``sigma_u`` at the fixed point ``w_J`` (an entry of ``A``)."""
        return self.table.get(u, self.fixed_point(J))

    def c_entry(self, I: int, J: int) -> GradedScalar:
        """``p_I`` at ``w_J``; zero unless ``I`` is a subset of ``J``."""
        if I & ~J:
            return ZERO
        return self.restrict(self.coxeter[I], J)

    def m(self, I: int) -> int:
        hit = self._mult.get(I)
        if hit is None:
            hit = self._mult[I] = multiplicity(self.rs, I, self.coxeter[I])
        return hit

    def solve(self, rhs, within: int | None = None) -> dict[int, GradedScalar]:
        """Coordinates ``x`` with ``sum_K x_K p_K`` restricting to ``rhs[L]`` at each ``w_L``.

        ``rhs`` maps subsets to localizations (missing means zero).  Only
        subsets of ``within`` are solved for; their values never depend on
        localizations at larger fixed points.
        """
        if within is None:
            within = self.rs.full
        x: dict[int, GradedScalar] = {}
        for J in subsets_of(within):
            acc = rhs.get(J, ZERO)
            for K, xk in x.items():
                if xk and K != J and not (K & ~J):
                    acc = acc - xk * self.c_entry(K, J)
            if acc:
                try:
                    x[J] = acc / self.c_entry(J, J)
                except ArithmeticError as exc:
                    raise NonIntegralExpansion(
                        f"coordinate at {_fmt_subset(J)} is not a polynomial in t: {exc}"
                    ) from None
            else:
                x[J] = ZERO
        return x

    def pullback_coordinates(self, u: WeylElement) -> dict[int, GradedScalar]:
        """``b_u^J`` for all ``J``: the pullback of ``sigma_u`` in the ``p`` basis."""
        hit = self._solutions.get(u.m)
        if hit is None:
            rhs = {J: self.restrict(u, J) for J in self.subsets}
            hit = self._solutions[u.m] = self.solve(rhs)
        return hit


def _fmt_subset(I: int) -> str:
    return "{" + ",".join(str(i + 1) for i in members(I)) + "}"


# ---------------------------------------------------------------- matrices

@dataclass
class MatrixBundle:
    rows: list[WeylElement]
    subsets: list[int]
    A: list[list[GradedScalar]]
    C: list[list[GradedScalar]]
    M: list[int]

    def validate(self, basis: PetersonBasis) -> None:
        for a, I in enumerate(self.subsets):
            if self.M[a] < 1:
                raise InternalInconsistency(f"m(v_{_fmt_subset(I)}) = {self.M[a]} < 1")
            for b, J in enumerate(self.subsets):
                nonzero = bool(self.C[a][b])
                if nonzero != (not (I & ~J)):
                    raise InternalInconsistency(
                        f"C[{_fmt_subset(I)},{_fmt_subset(J)}] = {self.C[a][b]} breaks triangularity"
                    )
        index = {u.m: r for r, u in enumerate(self.rows)}
        for a, I in enumerate(self.subsets):
            r = index.get(basis.coxeter[I].m)
            if r is not None and self.A[r] != self.C[a]:
                raise InternalInconsistency(f"row v_{_fmt_subset(I)} of A differs from C")


def build_matrices(basis: PetersonBasis, rows: str = "subsets", cap: int = DEFAULT_CAP) -> MatrixBundle:
    """Fill ``A``, ``C`` and ``M``; ``rows`` is ``"all"`` (every ``u`` in ``W``) or ``"subsets"``."""
    subsets = basis.subsets
    if rows == "all":
        elems = basis.group.enumerate(cap)
    elif rows == "subsets":
        elems = [basis.coxeter[I] for I in subsets]
    else:
        raise ValueError(f"rows must be 'all' or 'subsets', not {rows!r}")
    A = [[basis.restrict(u, J) for J in subsets] for u in elems]
    C = [[basis.c_entry(I, J) for J in subsets] for I in subsets]
    M = [basis.m(I) for I in subsets]
    bundle = MatrixBundle(elems, subsets, A, C, M)
    bundle.validate(basis)
    return bundle


# ---------------------------------------------------------------- expansions

@dataclass
class Expansion:
    """Nonzero coefficients keyed by Weyl element (Schubert basis) or subset (Peterson basis)."""

    kind: str
    basis: PetersonBasis
    terms: dict = field(default_factory=dict)
    subject: object = None

    def items(self):
        if self.kind == "schubert":
            return sorted(self.terms.items(), key=lambda kv: (kv[0].length, kv[0].word))
        return sorted(self.terms.items(), key=lambda kv: subset_key(kv[0]))

    def __getitem__(self, key) -> GradedScalar:
        return self.terms.get(key, ZERO)

    def __len__(self):
        return len(self.terms)

    def to_json(self) -> dict:
        rs = self.basis.rs
        out: dict = {"type": rs.name}
        if self.kind == "schubert":
            I = self.subject
            out["basis"] = {
                "I": [i + 1 for i in members(I)],
                "coxeter": [i + 1 for i in self.basis.coxeter[I].word],
            }
            out["expansion"] = [
                {"u": [i + 1 for i in u.word], **c.to_json()} for u, c in self.items()
            ]
        else:
            out["subject"] = self.subject
            out["expansion"] = [
                {
                    "K": [i + 1 for i in members(K)],
                    "coxeter": [i + 1 for i in self.basis.coxeter[K].word],
                    **c.to_json(),
                }
                for K, c in self.items()
            ]
        return out


def _require_integral(value: GradedScalar, what: str) -> GradedScalar:
    if not value.is_integral:
        raise NonIntegralExpansion(f"{what} = {value} is not integral")
    return value


def schubert_expansion(basis: PetersonBasis, I: int, cap: int = DEFAULT_CAP) -> Expansion:
    """Coefficients ``c_I^u`` of the pushforward of ``[P_I]`` in the Schubert basis ``[X_u]``.

    Only ``u <= w_I`` can contribute and that interval is exactly ``W_I``, so
    rows are enumerated inside the parabolic subgroup.
    """
    mI = basis.m(I)
    terms = {}
    for u in basis.group.enumerate(cap, within=I):
        rhs = {J: basis.restrict(u, J) for J in subsets_of(I)}
        x = basis.solve(rhs, within=I)[I]
        if x:
            c = _require_integral(x * mI, f"c_{_fmt_subset(I)}^{format_word(u.word)}")
            if c.degree != u.length - I.bit_count():
                raise InternalInconsistency(f"degree of c^{u!r} is {c.degree}")
            terms[u] = c
    return Expansion("schubert", basis, terms, I)


def schubert_coefficient(basis: PetersonBasis, I: int, u: WeylElement) -> GradedScalar:
    """Single coefficient ``c_I^u = m(v_I) b_u^I``."""
    return basis.pullback_coordinates(u)[I] * basis.m(I)


def pullback_expansion(basis: PetersonBasis, w: WeylElement) -> Expansion:
    """Coefficients ``b_w^J`` of the pullback of ``sigma_w`` in the ``p_J`` basis."""
    coords = basis.pullback_coordinates(w)
    terms = {}
    for J, b in coords.items():
        if not b:
            continue
        if b.coeff < 0:
            raise InternalInconsistency(f"negative coefficient b_{format_word(w.word)}^{_fmt_subset(J)} = {b}")
        terms[J] = b
    return Expansion("peterson", basis, terms, {"w": [i + 1 for i in w.word]})


def structure_constants(basis: PetersonBasis, I: int, J: int) -> Expansion:
    """``c_{I,J}^K`` in ``p_I p_J = sum_K c_{I,J}^K p_K``, via localization at every ``w_L``."""
    rhs = {}
    for L in basis.subsets:
        if not (I & ~L) and not (J & ~L):
            rhs[L] = basis.c_entry(I, L) * basis.c_entry(J, L)
    x = basis.solve(rhs)
    terms = {}
    for K, c in x.items():
        if c:
            terms[K] = c
    return Expansion(
        "peterson", basis, terms,
        {"I": [i + 1 for i in members(I)], "J": [i + 1 for i in members(J)]},
    )


# ---------------------------------------------------------------- reports

@dataclass
class Report:
    name: str
    checks: int = 0
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def check(self, condition: bool, message: str) -> None:
        self.checks += 1
        if not condition:
            self.violations.append(message)

    def raise_if_failed(self) -> "Report":
        if self.violations:
            raise VerificationFailure(self)
        return self

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.checks} checks, {len(self.violations)} violations"


def verify_duality(basis: PetersonBasis, raise_on_failure: bool = True) -> Report:
    """``c_J^{v}`` equals ``m(v) delta_{I,J}`` for every Coxeter element ``v`` of every ``I``.

    With ``v = v_I`` this is the duality statement; the remaining Coxeter
    elements cover the vanishing lemma and the rescaling between choices.
    """
    rep = Report(f"duality[{basis.rs.name}]")
    g = basis.group
    for I in basis.subsets:
        for v in g.coxeter_elements(I):
            mv = multiplicity(basis.rs, I, v)
            coords = basis.pullback_coordinates(v)
            for J in basis.subsets:
                c = coords[J] * basis.m(J)
                want = GradedScalar(mv, 0) if J == I else ZERO
                rep.check(
                    c == want,
                    f"c_{_fmt_subset(J)}^{format_word(v.word)} = {c}, expected {want}",
                )
    if raise_on_failure:
        rep.raise_if_failed()
    return rep


def verify_positivity(basis: PetersonBasis, products: bool = True, cap: int = DEFAULT_CAP,
                      raise_on_failure: bool = True) -> Report:
    """Nonnegativity, integrality, support and degree of ``c_I^u`` and ``c_{I,J}^K``."""
    rs = basis.rs
    g = basis.group
    rep = Report(f"positivity[{rs.name}]")
    W = g.enumerate(cap)
    for I in basis.subsets:
        wI = basis.fixed_point(I)
        for u in W:
            try:
                c = schubert_coefficient(basis, I, u)
            except NonIntegralExpansion as exc:
                rep.check(False, str(exc))
                continue
            if not c:
                continue
            tag = f"c_{_fmt_subset(I)}^{format_word(u.word) or 'e'} = {c}"
            rep.check(c.is_integral and c.coeff > 0, f"{tag} not a positive integer multiple")
            rep.check(c.degree == u.length - I.bit_count(), f"{tag} has wrong degree")
            rep.check(g.bruhat_leq(u, wI), f"{tag} but u is not below w_I")
    if products:
        table = {}
        for I in basis.subsets:
            for J in basis.subsets:
                try:
                    table[I, J] = sc = structure_constants(basis, I, J)
                except NonIntegralExpansion as exc:
                    rep.check(False, str(exc))
                    continue
                for K, c in sc.terms.items():
                    tag = f"c_{{{_fmt_subset(I)},{_fmt_subset(J)}}}^{_fmt_subset(K)} = {c}"
                    rep.check(c.coeff > 0, f"{tag} is negative")
                    rep.check(not ((I | J) & ~K), f"{tag} has K not containing I and J")
                    rep.check(
                        c.degree == I.bit_count() + J.bit_count() - K.bit_count(),
                        f"{tag} has wrong degree",
                    )
                    # p_K / m(v_K) is the integral basis, so rescaled constants are integers
                    scaled = c * Fraction(basis.m(K), basis.m(I) * basis.m(J))
                    rep.check(scaled.is_integral, f"{tag} rescales to non-integral {scaled}")
        for (I, J), sc in table.items():
            other = table.get((J, I))
            if other is not None:
                rep.check(sc.terms == other.terms,
                          f"p_{_fmt_subset(I)} p_{_fmt_subset(J)} is not commutative")
            if I == 0:
                rep.check(sc.terms == {J: GradedScalar(1, 0)},
                          f"p_{{}} is not a unit against p_{_fmt_subset(J)}")
    if raise_on_failure:
        rep.raise_if_failed()
    return rep


def verify_conjecture(rs: RootSystem, every_coxeter: bool = True, cap: int = DEFAULT_CAP,
                      subsets: Iterable[int] | None = None) -> tuple[Report, list[ConjectureResult]]:
    """Records the closed-form multiplicity comparison; never raises on disagreement."""
    g = weyl_group(rs)
    rep = Report(f"conjecture[{rs.name}]")
    results = []
    for I in (all_subsets(rs.rank) if subsets is None else subsets):
        elems = g.coxeter_elements(I) if every_coxeter else [g.default_coxeter(I)]
        for v in elems:
            res = conjecture_multiplicity(rs, I, v, cap)
            results.append(res)
            tag = (f"I={_fmt_subset(I)} v={format_word(v.word)}: m={res.multiplicity}, "
                   f"|R|*prod a={res.via_highest_root}, via |W_I|={res.via_group_order}")
            if res.connected:
                rep.check(res.agree, tag)
            else:
                rep.check(res.agree_componentwise,
                          f"{tag}, componentwise={res.via_components}")
                if not res.agree:
                    rep.notes.append(f"{tag} (disconnected; literal product form differs)")
    return rep, results


def component_factorization_check(rs: RootSystem, I: int,
                                  choices: Mapping[int, WeylElement] | None = None,
                                  raise_on_failure: bool = True) -> Report:
    """``m(v_1 ... v_k)`` equals the product of ``m(v_j)`` over connected components."""
    g = weyl_group(rs)
    rep = Report(f"factorization[{rs.name}:{_fmt_subset(I)}]")
    comps = rs.components(I)
    parts = []
    v = g.identity
    for comp in comps:
        vj = (choices or {}).get(comp) or g.default_coxeter(comp)
        parts.append(multiplicity(rs, comp, vj))
        v = v * vj
    whole = multiplicity(rs, I, v)
    rep.check(whole == math.prod(parts), f"m = {whole} but component product = {parts}")
    rep.notes.append(f"m({format_word(v.word)}) = {whole} = prod {parts}")
    if raise_on_failure:
        rep.raise_if_failed()
    return rep


def stability_check(rs: RootSystem, sub: int, raise_on_failure: bool = True) -> Report:
    """Compare quantities indexed inside ``sub`` with a standalone root system of that type."""
    rep = Report(f"stability[{rs.name}:{_fmt_subset(sub)}]")
    if sub == 0:
        return rep
    nodes = members(sub)
    local = rs.subsystem(sub)

    def to_local(M: int) -> int:
        return sum(1 << k for k, i in enumerate(nodes) if (M >> i) & 1)

    ambient = PetersonBasis(rs)
    alone = PetersonBasis(local)
    inner = subsets_of(sub)
    for J in inner:
        a = ambient.m(J)
        b = alone.m(to_local(J))
        rep.check(a == b, f"m(v_{_fmt_subset(J)}) ambient {a} vs standalone {b}")
    for I in inner:
        for J in inner:
            amb = structure_constants(ambient, I, J)
            loc = structure_constants(alone, to_local(I), to_local(J))
            lhs = {to_local(K): c for K, c in amb.terms.items() if not (K & ~sub)}
            rep.check(
                lhs == loc.terms,
                f"c_{{{_fmt_subset(I)},{_fmt_subset(J)}}} ambient {_fmt_terms(lhs)} "
                f"vs standalone {_fmt_terms(loc.terms)}",
            )
    if raise_on_failure:
        rep.raise_if_failed()
    return rep


def _fmt_terms(terms: dict) -> str:
    return "{" + ", ".join(f"{_fmt_subset(K)}: {c}" for K, c in sorted(terms.items(), key=lambda kv: subset_key(kv[0]))) + "}"
