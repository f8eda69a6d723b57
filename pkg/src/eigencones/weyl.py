"""Weyl groups, minimal parabolic coset representatives, duals, embeddings.

An element is identified by its integer action matrix on the weight lattice
in fundamental-weight coordinates; reduced words are witnesses recovered by
descent stripping (smallest index first), so the digit strings we print are
canonical but element comparison never goes through words.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import ConfigurationError, ResourceCapError, UsageError
from .linalg import mat_inv
from .rootsys import RootSystem, Weight, build_root_system

WEYL_SIZE_CAP = 1_200_000


class WeylElement:
    """Immutable Weyl group element; identity = the integer action matrix."""

    __slots__ = ("root_system", "matrix", "length", "_word", "_hash")

    def __init__(self, root_system, matrix, length=None):
        self.root_system = root_system
        self.matrix = matrix
        self.length = _length(root_system, matrix) if length is None else length
        self._word = None
        self._hash = hash((root_system.kind, root_system.rank, matrix))

    @property
    def word(self):
        if self._word is None:
            self._word = _canonical_word(self.root_system, self.matrix)
        return self._word

    def __eq__(self, other):
        return (
            isinstance(other, WeylElement)
            and self.root_system.label == other.root_system.label
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return self._hash

    def __mul__(self, other):
        if other.root_system.label != self.root_system.label:
            raise UsageError("elements of different Weyl groups")
        return WeylElement(self.root_system, _mat_mul_int(self.matrix, other.matrix))

    def inverse(self):
        m = tuple(
            tuple(int(x) for x in row)
            for row in mat_inv(tuple(tuple(Fraction(x) for x in r) for r in self.matrix))
        )
        return WeylElement(self.root_system, m, self.length)

    def apply_fw(self, coords):
        return tuple(
            sum(row[k] * coords[k] for k in range(len(coords))) for row in self.matrix
        )

    def apply(self, w: Weight) -> Weight:
        return Weight(self.root_system, self.apply_fw(w.coords))

    def apply_eps(self, v):
        """Action on an ambient vector lying in the root span."""
        R = self.root_system
        return R.from_fw(self.apply_fw(R.fw_coords(v)))

    def sends_positive(self, i):
        """True iff w(alpha_i) is a positive root (1-based i)."""
        ctx = _ctx(self.root_system)
        img = self.apply_fw(ctx.simple_fw[i - 1])
        return _fw_is_positive(ctx, img)

    def __repr__(self):
        return f"WeylElement({self.root_system.label}, {word_str(self)})"


class _Context:
    """Per-root-system integer data used by every element operation."""

    def __init__(self, R):
        r = R.rank
        C = R.cartan_matrix
        self.simple_fw = tuple(
            tuple(C[i][j] for j in range(r)) for i in range(r)
        )  # alpha_i over the fundamental weights
        self.refl = tuple(_simple_matrix(C, i) for i in range(r))
        self.pos_fw = tuple(R.fw_coords(b) for b in R.positive_roots)
        self.fw_to_alpha = mat_inv(
            tuple(tuple(Fraction(C[i][j]) for i in range(r)) for j in range(r))
        )  # transpose-inverse of the Cartan matrix
        self.id_matrix = tuple(
            tuple(1 if i == j else 0 for j in range(r)) for i in range(r)
        )


def _simple_matrix(C, i):
    r = len(C)
    return tuple(
        tuple((1 if j == k else 0) - (C[i][j] if k == i else 0) for k in range(r))
        for j in range(r)
    )


@lru_cache(maxsize=None)
def _ctx(R):
    return _Context(R)


def _mat_mul_int(a, b):
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def _fw_is_positive(ctx, fw):
    for row in ctx.fw_to_alpha:
        c = sum(r * f for r, f in zip(row, fw))
        if c != 0:
            return c > 0
    raise UsageError("zero vector has no sign")


def _length(R, matrix):
    ctx = _ctx(R)
    n = 0
    for fw in ctx.pos_fw:
        img = tuple(sum(row[k] * fw[k] for k in range(len(fw))) for row in matrix)
        if not _fw_is_positive(ctx, img):
            n += 1
    return n


def _canonical_word(R, matrix):
    """Reduced word by repeatedly stripping the smallest right descent."""
    ctx = _ctx(R)
    word = []
    m = matrix
    while m != ctx.id_matrix:
        for i in range(R.rank):
            img = tuple(
                sum(row[k] * ctx.simple_fw[i][k] for k in range(R.rank)) for row in m
            )
            if not _fw_is_positive(ctx, img):
                word.append(i + 1)
                m = _mat_mul_int(m, ctx.refl[i])
                break
        else:
            raise UsageError("matrix is not a Weyl group element")
    return tuple(reversed(word))


# -- constructors -----------------------------------------------------------


def identity(R):
    return WeylElement(R, _ctx(R).id_matrix, 0)


def simple_reflection(R, i):
    if not 1 <= i <= R.rank:
        raise UsageError(f"simple reflection index {i} out of range")
    return WeylElement(R, _ctx(R).refl[i - 1], 1)


def reflection(R, beta):
    """The reflection through an arbitrary root beta (epsilon coordinates)."""
    if not R.is_root(tuple(beta)):
        raise UsageError("not a root")
    fw = R.fw_coords(beta)
    a = R.alpha_coords(beta)
    nb = sum(x * y for x, y in zip(beta, beta))
    cvee = [
        ai * sum(x * y for x, y in zip(R.simple_roots[k], R.simple_roots[k])) / nb
        for k, ai in enumerate(a)
    ]  # coroot coefficients of beta over the simple coroots
    r = R.rank
    m = tuple(
        tuple(int((1 if j == k else 0) - fw[j] * cvee[k]) for k in range(r))
        for j in range(r)
    )
    return WeylElement(R, m)


def word_to_element(R, word):
    """Parse a digit string like "43234" (or an index iterable)."""
    if isinstance(word, str):
        if word in ("", "e"):
            return identity(R)
        word = [int(ch) for ch in word]
    w = identity(R)
    for i in word:
        w = w * simple_reflection(R, i)
    return w


def word_str(w):
    if w.root_system.rank > 9:
        raise UsageError("digit-string words are defined for rank <= 9")
    return "".join(str(i) for i in w.word) if w.word else "e"


# -- group and coset enumeration -------------------------------------------


@lru_cache(maxsize=None)
def generate_weyl_group(R, cap=WEYL_SIZE_CAP):
    """The full Weyl group by breadth-first closure under the generators."""
    ctx = _ctx(R)
    seen = {ctx.id_matrix: 0}
    frontier = [ctx.id_matrix]
    while frontier:
        new = []
        for m in frontier:
            for s in ctx.refl:
                p = _mat_mul_int(m, s)
                if p not in seen:
                    seen[p] = seen[m] + 1
                    new.append(p)
        if len(seen) > cap:
            raise ResourceCapError(
                f"Weyl group of {R.label} exceeds the size cap {cap}", cap=cap
            )
        frontier = new
    return frozenset(WeylElement(R, m, l) for m, l in seen.items())


@lru_cache(maxsize=None)
def longest_element(R):
    """w0 by greedy ascent; never materializes the full group."""
    w = identity(R)
    while True:
        for i in range(1, R.rank + 1):
            if w.sends_positive(i):
                w = w * simple_reflection(R, i)
                break
        else:
            return w


class ParabolicSpec:
    """A maximal parabolic: one excluded simple root, 1-based."""

    __slots__ = ("root_system", "excluded")

    def __init__(self, root_system, excluded):
        if not 1 <= excluded <= root_system.rank:
            raise ConfigurationError(f"excluded index {excluded} out of range")
        self.root_system = root_system
        self.excluded = excluded

    @property
    def levi_simple(self):
        return tuple(
            i for i in range(1, self.root_system.rank + 1) if i != self.excluded
        )

    def __eq__(self, other):
        return (
            isinstance(other, ParabolicSpec)
            and self.root_system.label == other.root_system.label
            and self.excluded == other.excluded
        )

    def __hash__(self):
        return hash((self.root_system.label, self.excluded))

    def __repr__(self):
        return f"ParabolicSpec({self.root_system.label}, P{self.excluded})"


def is_minimal_rep(w, P):
    return all(w.sends_positive(j) for j in P.levi_simple)


def minimal_rep(w, P):
    """The minimal representative of the coset w W_P."""
    while True:
        for j in P.levi_simple:
            if not w.sends_positive(j):
                w = w * simple_reflection(w.root_system, j)
                break
        else:
            return w


@lru_cache(maxsize=None)
def _coset_reps_cached(R, excluded):
    P = ParabolicSpec(R, excluded)
    # W^P is closed under suffixes of reduced words, so every minimal
    # representative of length l+1 is s_i * (minimal rep of length l) for
    # some simple i; a left-multiplication BFS over minimal reps is complete.
    reps = {identity(R)}
    frontier = list(reps)
    while frontier:
        new = []
        for w in frontier:
            for i in range(1, R.rank + 1):
                u = simple_reflection(R, i) * w
                if u.length == w.length + 1 and is_minimal_rep(u, P) and u not in reps:
                    reps.add(u)
                    new.append(u)
        frontier = new
    return tuple(sorted(reps, key=lambda w: (w.length, w.word)))


def minimal_coset_reps(R, P):
    return _coset_reps_cached(R, P.excluded)


def dual_rep(w, P):
    """Minimal representative of w0 w W_P; pairs complementary dimensions."""
    if not is_minimal_rep(w, P):
        raise UsageError("dual_rep requires a minimal coset representative")
    return minimal_rep(longest_element(w.root_system) * w, P)


def poincare_counts(elements):
    """Length generating function as a coefficient list."""
    counts = {}
    for w in elements:
        counts[w.length] = counts.get(w.length, 0) + 1
    return [counts.get(l, 0) for l in range(max(counts) + 1)]


# -- embeddings -------------------------------------------------------------


@lru_cache(maxsize=None)
def _generator_images(E):
    out = []
    for orbit in E.orbits:
        g = identity(E.ambient)
        for beta in orbit:
            g = g * reflection(E.ambient, beta)
        out.append(g)
    return tuple(out)


def embed_element(E, w, minimize_into=None):
    """Image of a sub Weyl element in the ambient group.

    The homomorphism sends the i-th sub generator to the product of the
    reflections of its orbit (a single root reflection in the sub-root-system
    cases).  With minimize_into=P the image is replaced by the minimal
    representative of its W_P coset — that is the map the coset tables use;
    for folded embeddings the raw image need not itself be minimal.
    """
    if w.root_system.label != E.sub.label:
        raise UsageError("element is not over the sub root system")
    gens = _generator_images(E)
    img = identity(E.ambient)
    for i in w.word:
        img = img * gens[i - 1]
    if minimize_into is not None:
        img = minimal_rep(img, minimize_into)
    return img


def check_embedding_homomorphism(E, elements=None):
    """embed is multiplicative on the sub Weyl group (spot or full check)."""
    if elements is None:
        elements = generate_weyl_group(E.sub)
    elements = list(elements)
    for a in elements:
        for b in elements:
            if embed_element(E, a) * embed_element(E, b) != embed_element(E, a * b):
                raise UsageError(
                    f"{E.case}: embedding is not a homomorphism at {word_str(a)},{word_str(b)}"
                )
    return True


def check_embedding_restriction(E, w):
    """The image acts on the sub weight space the way w does."""
    for i, beta in enumerate(E.simple_images):
        img = embed_element(E, w)
        lhs = tuple(
            E.ambient.coroot_pairing(img.apply_eps(beta), b2) for b2 in E.simple_images
        )
        a = w.apply_fw(E.sub.fw_coords(E.sub.simple_roots[i]))
        rhs = tuple(Fraction(x) for x in a)
        if tuple(lhs) != rhs:
            return False
    return True


def verify_dual_commutes(E, q):
    """Per element of W_M^Q: embed(dual_Q(w)) == dual_P(embed(w)), minimized."""
    Q = ParabolicSpec(E.sub, q)
    P = ParabolicSpec(E.ambient, E.matched_parabolic(q))
    rows = []
    ok = True
    for w in minimal_coset_reps(E.sub, Q):
        lhs = embed_element(E, dual_rep(w, Q), minimize_into=P)
        rhs = dual_rep(embed_element(E, w, minimize_into=P), P)
        rows.append(
            {
                "w": word_str(w),
                "embed_dual": word_str(lhs),
                "dual_embed": word_str(rhs),
                "commutes": lhs == rhs,
            }
        )
        ok = ok and lhs == rhs
    return {"case": E.case, "sub_parabolic": q, "ambient_parabolic": P.excluded,
            "all_commute": ok, "rows": rows}


# -- table export -----------------------------------------------------------


def coset_table(R, P):
    """W^P with the dual involution, in the layout of the paper's tables."""
    reps = minimal_coset_reps(R, P)
    return [
        {"word": word_str(w), "length": w.length, "dual": word_str(dual_rep(w, P))}
        for w in reps
    ]


def coset_table_json(R, P):
    return {
        "schema_version": 1,
        "group": {"kind": R.kind, "rank": R.rank},
        "parabolic": P.excluded,
        "cosets": coset_table(R, P),
    }
