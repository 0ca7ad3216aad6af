"""The left adjoint F of U, its unit, the hom-set bijection and a verifier."""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import (
    AlgebraError,
    FiniteAlgebra,
    Homomorphism,
    check_variety_membership,
    compile_term,
    enumerate_homomorphisms,
    eval_term,
    get_variety,
)
from .congruence import CongruenceWitness, congruence_generated, quotient_algebra
from .free import FreeAlgebraResult, extend_to_free_morphism, free_algebra
from .relational import (
    POSEMIGROUP_ORDER,
    IdentityScheme,
    RelationalStructure,
    apply_U,
    enumerate_relational_homomorphisms,
    get_scheme,
)


@dataclass(frozen=True, eq=False)
class FObjectResult:
    input: RelationalStructure
    free: FreeAlgebraResult
    theta: CongruenceWitness
    algebra: FiniteAlgebra
    projection: Homomorphism        # free algebra -> quotient
    eta: tuple[int, ...]            # input element -> quotient element
    scheme: IdentityScheme

    def representative(self, block: int) -> int:
        """Least free element in the block (its normal form is shortlex-least)."""
        return self.projection.map.index(block)


def generating_pairs(free: FreeAlgebraResult, scheme: IdentityScheme,
                     structure: RelationalStructure) -> list[tuple[int, int]]:
    """The pairs (t_i(x), s_i(x)) evaluated in the free algebra, for x in R."""
    compiled = [(compile_term(free.algebra, t), compile_term(free.algebra, s))
                for t, s in scheme.pairs]
    pairs = []
    for tup in structure.tuples:
        env = [free.generators[x] for x in tup]
        for t, s in compiled:
            pairs.append((t(env), s(env)))
    return pairs


def build_theta_X(free: FreeAlgebraResult, scheme, structure: RelationalStructure) -> CongruenceWitness:
    scheme = get_scheme(scheme)
    if free.n_generators != structure.size:
        raise AlgebraError("free algebra must have one generator per element of the structure")
    if scheme.signature != free.algebra.signature:
        raise AlgebraError("scheme signature does not match the variety")
    if scheme.arity != structure.scheme.arity:
        raise AlgebraError("scheme arity does not match the structure")
    return congruence_generated(free.algebra, generating_pairs(free, scheme, structure))


def apply_F_object(structure: RelationalStructure, variety, scheme=None) -> FObjectResult:
    """F(X): the free algebra on X modulo the congruence generated by the scheme at R-tuples."""
    variety = get_variety(variety)
    scheme = get_scheme(scheme if scheme is not None else structure.scheme)
    if scheme.signature != variety.signature:
        raise AlgebraError("scheme signature does not match the variety signature")
    names = structure.labels
    free = free_algebra(variety.registry_id, structure.size, names)
    theta = build_theta_X(free, scheme, structure)
    q = quotient_algebra(theta)
    eta = tuple(q.projection.map[g] for g in free.generators)
    result = FObjectResult(structure, free, theta, q.algebra, q.projection, eta, scheme)
    _check_eta(result)
    return result


def _check_eta(fx: FObjectResult):
    """eta lands in U(F X): the scheme identities hold at eta of every R-tuple."""
    for tup in fx.input.tuples:
        env = [fx.eta[x] for x in tup]
        for t, s in fx.scheme.pairs:
            if eval_term(fx.algebra, t, env) != eval_term(fx.algebra, s, env):
                raise AlgebraError(f"internal error: eta does not preserve {tup}")


def apply_F_morphism(f: Homomorphism, fx: FObjectResult, fy: FObjectResult) -> Homomorphism:
    """F f: F X -> F Y, induced by the generator map f."""
    if fx.free.variety != fy.free.variety or fx.scheme != fy.scheme:
        raise AlgebraError("F X and F Y built over different varieties or schemes")
    if f.source != fx.input or f.target != fy.input:
        raise AlgebraError("morphism does not match the F objects")
    tilde = extend_to_free_morphism(f.map, fx.free, fy.free)
    py = fy.projection.map
    # image of theta_X's generators must land in theta_Y
    for a, b in generating_pairs(fx.free, fx.scheme, fx.input):
        if py[tilde.map[a]] != py[tilde.map[b]]:
            raise AlgebraError("internal error: F f is not well defined")
    image = [None] * fx.algebra.size
    for e, block in enumerate(fx.projection.map):
        v = py[tilde.map[e]]
        if image[block] is None:
            image[block] = v
        elif image[block] != v:
            raise AlgebraError("internal error: F f is not well defined")
    return Homomorphism(fx.algebra, fy.algebra, tuple(image))


def phi_forward(g: Homomorphism, fx: FObjectResult, scheme=None) -> Homomorphism:
    """phi(g) = U g . eta, as a relational morphism X -> U A."""
    if g.source != fx.algebra:
        raise AlgebraError("g must start at F X")
    scheme = get_scheme(scheme if scheme is not None else fx.scheme)
    ua = apply_U(g.target, scheme)
    return Homomorphism(fx.input, ua, tuple(g.map[e] for e in fx.eta))


def phi_inverse(f: Homomorphism, fx: FObjectResult, a: FiniteAlgebra) -> Homomorphism:
    """The unique g: F X -> A with g(eta(x)) = f(x).

    Every free element of a block is evaluated in ``a`` with generators sent
    by ``f``; all members must agree.
    """
    env = list(f.map)
    image = [None] * fx.algebra.size
    for e, block in enumerate(fx.projection.map):
        v = eval_term(a, fx.free.terms[e], env)
        if image[block] is None:
            image[block] = v
        elif image[block] != v:
            raise AlgebraError(
                f"internal error: block {block} evaluates inconsistently under {f.map}")
    g = Homomorphism(fx.algebra, a, tuple(image))
    if tuple(g.map[e] for e in fx.eta) != f.map:
        raise AlgebraError("internal error: phi_inverse does not extend f")
    return g


# ---------------------------------------------------------------------------
# Verification


@dataclass
class AdjunctionReport:
    algebra_homs: int = 0
    relational_homs: int = 0
    injective: bool = True
    surjective: bool = True
    round_trip: bool = True
    unit_squares: int = 0
    unit_failures: list = field(default_factory=list)
    naturality_checks: int = 0
    naturality_failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.injective and self.surjective and self.round_trip
                and not self.unit_failures and not self.naturality_failures)

    def __bool__(self):
        return self.passed


class FCache:
    """Memoises F X per (structure, variety, scheme)."""

    def __init__(self, variety, scheme=None):
        self.variety = get_variety(variety)
        self.scheme = scheme
        self._cache: dict = {}

    def __call__(self, structure: RelationalStructure) -> FObjectResult:
        key = (structure, structure.labels)
        if key not in self._cache:
            self._cache[key] = apply_F_object(structure, self.variety, self.scheme)
        return self._cache[key]


def _default_probes(variety, scheme):
    from .fixtures import poset_fixtures, rrb_fixtures

    structures = poset_fixtures(3) if scheme == POSEMIGROUP_ORDER else []
    algebras = [b for b in rrb_fixtures(3)
                if b.signature == variety.signature and check_variety_membership(b, variety)]
    return structures, algebras


def verify_adjunction(structure: RelationalStructure, a: FiniteAlgebra, variety,
                      probe_structures=None, probe_algebras=None, scheme=None,
                      cache: FCache | None = None) -> AdjunctionReport:
    """Exhaustive check of the hom-set bijection, unit squares and naturality.

    ``probe_structures`` supply the Y of every h: Y -> X; ``probe_algebras``
    the B of every k: A -> B.  Left as None, they default to the posets and
    bands of size at most 3 that fit the scheme and variety.
    """
    variety = get_variety(variety)
    scheme = get_scheme(scheme if scheme is not None else structure.scheme)
    if probe_structures is None or probe_algebras is None:
        default_s, default_a = _default_probes(variety, scheme)
        probe_structures = default_s if probe_structures is None else probe_structures
        probe_algebras = default_a if probe_algebras is None else probe_algebras
    cache = cache or FCache(variety, scheme)
    fx = cache(structure)
    ua = apply_U(a, scheme)
    report = AdjunctionReport()

    alg_homs = enumerate_homomorphisms(fx.algebra, a)
    rel_homs = enumerate_relational_homomorphisms(structure, ua)
    report.algebra_homs, report.relational_homs = len(alg_homs), len(rel_homs)
    images = [phi_forward(g, fx, scheme) for g in alg_homs]
    image_maps = {h.map for h in images}
    report.injective = len(image_maps) == len(alg_homs)
    report.surjective = image_maps == {h.map for h in rel_homs}
    for g, f in zip(alg_homs, images):
        if phi_inverse(f, fx, a).map != g.map:
            report.round_trip = False
    for f in rel_homs:
        if phi_forward(phi_inverse(f, fx, a), fx, scheme).map != f.map:
            report.round_trip = False

    for y in probe_structures:
        if y.scheme != structure.scheme:
            continue
        fy = cache(y)
        for h in enumerate_relational_homomorphisms(y, structure):
            fh = apply_F_morphism(h, fy, fx)
            report.unit_squares += 1
            lhs = tuple(fh.map[e] for e in fy.eta)
            rhs = tuple(fx.eta[h.map[e]] for e in y.universe)
            if lhs != rhs:
                report.unit_failures.append((y, h.map))
            # phi_{Y,A}(g . F h) = phi_{X,A}(g) . h
            for g, pg in zip(alg_homs, images):
                report.naturality_checks += 1
                left = phi_forward(fh.then(g), fy, scheme).map
                right = tuple(pg.map[h.map[e]] for e in y.universe)
                if left != right:
                    report.naturality_failures.append(("structure", y, h.map, g.map))

    for b in probe_algebras:
        if b.signature != a.signature:
            continue
        for k in enumerate_homomorphisms(a, b):
            # phi_{X,B}(k . g) = U k . phi_{X,A}(g)
            for g, pg in zip(alg_homs, images):
                report.naturality_checks += 1
                left = phi_forward(g.then(k), fx, scheme).map
                right = tuple(k.map[v] for v in pg.map)
                if left != right:
                    report.naturality_failures.append(("algebra", b, k.map, g.map))
    return report
