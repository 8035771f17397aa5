"""Exceptional bases of Mukai lattices: mutations, duals, wedge powers.

Positions are 1-based to match braid letters: the letter b_i acts on the
adjacent pair (i, i+1). A positive letter is a left mutation
(e_i, e_{i+1}) -> (L_{e_i} e_{i+1}, e_i), a negative one a right mutation
(e_i, e_{i+1}) -> (e_{i+1}, R_{e_{i+1}} e_i).
"""

from dataclasses import dataclass, field

from .core_algebra import (
    BraidWord,
    antidiagonal,
    compound_matrix,
    det_exact,
    identity,
    inverse_exact,
    matmul,
    matmul_chain,
    subsets,
    transpose,
)


@dataclass(frozen=True)
class ExceptionalBasisState:
    """Gram matrix of an exceptional basis plus labels, signs and history.

    ``vectors`` optionally records each basis element as integer coordinates
    in a fixed reference basis.
    """

    gram: tuple
    labels: tuple = ()
    signs: tuple = ()
    history: BraidWord = None
    vectors: tuple = None

    def __post_init__(self):
        g = tuple(tuple(row) for row in self.gram)
        n = len(g)
        object.__setattr__(self, "gram", g)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{j}" for j in range(1, n + 1)))
        if not self.signs:
            object.__setattr__(self, "signs", (1,) * n)
        if self.history is None:
            object.__setattr__(self, "history", BraidWord(max(n, 1)))
        if self.vectors is not None:
            object.__setattr__(self, "vectors", tuple(tuple(v) for v in self.vectors))

    @property
    def n(self):
        return len(self.gram)

    def is_exceptional(self):
        return is_exceptional_gram(self.gram)

    def to_json(self):
        return {
            "n": self.n,
            "gram": [list(r) for r in self.gram],
            "labels": list(self.labels),
            "signs": list(self.signs),
            "history": self.history.to_json(),
        }

    @classmethod
    def from_json(cls, doc):
        n = doc["n"]
        return cls(
            gram=doc["gram"],
            labels=tuple(doc.get("labels", ())),
            signs=tuple(doc.get("signs", ())),
            history=BraidWord.from_json(doc.get("history", []), n),
        )


@dataclass(frozen=True)
class MukaiLattice:
    """Free Z-module of rank n with a (non-symmetric) integer bilinear form."""

    gram: tuple = field(default=())

    @property
    def n(self):
        return len(self.gram)

    def pairing(self, x, y):
        return sum(x[a] * self.gram[a][b] * y[b] for a in range(self.n) for b in range(self.n))

    def is_unimodular(self):
        return abs(det_exact(self.gram)) == 1


def is_exceptional_gram(g):
    n = len(g)
    return all(g[i][i] == 1 for i in range(n)) and all(g[j][i] == 0 for i in range(n) for j in range(i + 1, n))


def mutation_matrix(gram, i, direction):
    """H^i (left) or K^i (right) acting on the pair (i, i+1), 1-based."""
    n = len(gram)
    if not 1 <= i <= n - 1:
        raise ValueError(f"mutation position must lie in 1..{n - 1}, got {i}")
    a = i - 1
    g = gram[a][a + 1]
    m = identity(n)
    if direction == "left":
        m[a][a], m[a][a + 1], m[a + 1][a], m[a + 1][a + 1] = -g, 1, 1, 0
    elif direction == "right":
        m[a][a], m[a][a + 1], m[a + 1][a], m[a + 1][a + 1] = 0, 1, 1, -g
    else:
        raise ValueError("direction must be 'left' or 'right'")
    return m


def mutate(basis, i, direction="left"):
    """Left or right mutation of the adjacent pair (i, i+1)."""
    m = mutation_matrix(basis.gram, i, direction)
    gram = matmul_chain(transpose(m), [list(r) for r in basis.gram], m)
    a = i - 1
    labels = list(basis.labels)
    signs = list(basis.signs)
    if direction == "left":
        labels[a], labels[a + 1] = f"L({labels[a]}){labels[a + 1]}", labels[a]
        letter = (i, 1)
    else:
        labels[a], labels[a + 1] = labels[a + 1], f"R({labels[a + 1]}){labels[a]}"
        letter = (i, -1)
    signs[a], signs[a + 1] = signs[a + 1], signs[a]
    vectors = None
    if basis.vectors is not None:
        cols = transpose([list(v) for v in basis.vectors])
        vectors = transpose(matmul(cols, m))
    history = BraidWord(basis.n, basis.history.letters + (letter,))
    return ExceptionalBasisState(gram, tuple(labels), tuple(signs), history, vectors)


def braid_act_basis(basis, word):
    """Apply a braid word letter by letter (leftmost first)."""
    for i, e in word:
        basis = mutate(basis, i, "left" if e > 0 else "right")
    return basis


def braid_act_gram(gram, word):
    return [list(r) for r in braid_act_basis(ExceptionalBasisState(gram), word).gram]


def sign_act_gram(gram, signs):
    n = len(gram)
    return [[signs[i] * signs[j] * gram[i][j] for j in range(n)] for i in range(n)]


def dual_basis_gram(gram, kind):
    """Gram of the left/right dual (J G^{-T} J) or geometric dual (J G^T J)."""
    n = len(gram)
    j = antidiagonal(n)
    g = [list(r) for r in gram]
    if kind in ("left", "right"):
        inv_t = transpose(inverse_exact(g))
        return matmul_chain(j, inv_t, j)
    if kind == "geometric":
        if det_exact(g) == 0:
            raise ZeroDivisionError("singular Gram matrix")
        return matmul_chain(j, transpose(g), j)
    raise ValueError("kind must be left, right or geometric")


def left_dual_word(n):
    """b' = (B1 B2 ... B_{n-1})(B1 ... B_{n-2}) ... B1 on n strands."""
    letters = []
    for top in range(n - 1, 0, -1):
        letters.extend((i, -1) for i in range(1, top + 1))
    return BraidWord(n, tuple(letters))


def right_dual_word(n):
    """b = (b_{n-1} ... b_1)(b_{n-1} ... b_2) ... b_{n-1} on n strands."""
    letters = []
    for low in range(1, n):
        letters.extend((i, 1) for i in range(n - 1, low - 1, -1))
    return BraidWord(n, tuple(letters))


def canonical_operator(gram):
    """kappa = G^{-1} G^T, so that <x, y> = <y, kappa x>."""
    g = [list(r) for r in gram]
    return matmul(inverse_exact(g), transpose(g))


def wedge_lattice(gram, r):
    """Gram of the lexicographically ordered basis of Lambda^r V."""
    return compound_matrix([list(row) for row in gram], r)


def central_braid(n):
    """(b_1 b_2 ... b_{n-1})^n, the full-rotation generator of the centre."""
    return BraidWord(n, tuple((i, 1) for i in range(1, n)) * n)


# --------------------------------------------------------------------------
# Lifting an elementary braid to Lambda^r V
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class WedgeLift:
    """Result of lifting a letter on V to Lambda^r V.

    ``word`` takes the wedge of the mutated basis back to the wedge of the
    original basis, up to ``signs``. ``core`` is the part produced by the
    class-(3) shifting procedure; ``word`` may append swaps of mutually
    orthogonal neighbours needed to restore the exact lexicographic order.
    """

    word: BraidWord
    core: BraidWord
    signs: tuple

    def forward(self):
        """Word taking the original wedge basis to the mutated one."""
        return self.word.inverse()


def _generic_gram(n):
    return [[1 if i == j else (0 if j < i else 2 + 3 * i + 5 * j + i * j) for j in range(n)] for i in range(n)]


def _wedge_coords(vectors, r, n):
    """Plucker coordinates of all r-subsets of the given vectors."""
    out = []
    for idx in subsets(len(vectors), r):
        rows = [vectors[t] for t in idx]
        out.append(tuple(int(x) for x in [
            det_exact([[rows[a][c] for c in cols] for a in range(r)]) for cols in subsets(n, r)
        ]))
    return out


def wedge_braid_lift(letter, n, r, gram=None):
    """Lift the letter (i, e) on n strands to a word on C(n, r) strands."""
    i, e = letter
    if not 1 <= i <= n - 1 or e not in (1, -1):
        raise ValueError("bad letter")
    g = [list(row) for row in (gram or _generic_gram(n))]
    m = mutation_matrix(g, i, "left" if e > 0 else "right")
    eye = identity(n)
    new_vectors = transpose(matmul(eye, m))
    big_n = len(subsets(n, r))
    w = compound_matrix(g, r)
    current = _wedge_coords(new_vectors, r, n)
    targets = [tuple(1 if a == b else 0 for b in range(big_n)) for a in range(big_n)]

    def pair(x, y):
        return sum(x[a] * w[a][b] * y[b] for a in range(big_n) for b in range(big_n) if x[a] and y[b])

    found = _search(current, 0, targets, pair)
    if found is None:
        raise RuntimeError("wedge braid lift failed")
    letters, signs = found
    # the core word is everything before the trailing pure swaps
    core_len = len(letters)
    while core_len and letters[core_len - 1][2]:
        core_len -= 1
    word = BraidWord(big_n, tuple((a, b) for a, b, _ in letters))
    core = BraidWord(big_n, tuple((a, b) for a, b, _ in letters[:core_len]))
    return WedgeLift(word, core, tuple(signs))


def _search(current, q, targets, pair):
    """Depth-first search placing +/- targets[q], targets[q+1], ... in turn.

    An element moves left either by left mutations (it changes as it passes
    its neighbours) or by right mutations (it stays fixed and the passed
    neighbours change). Each move records (letter index, exponent, is_swap).
    """
    if q == len(targets):
        return [], []
    target = targets[q]
    neg = tuple(-x for x in target)
    for direction in (1, -1):
        for p in range(q, len(current)):
            if direction < 0 and current[p] not in (target, neg):
                continue
            trial = list(current)
            moves = []
            for pos in range(p, q, -1):
                a, b = trial[pos - 1], trial[pos]
                c = pair(a, b)
                if direction > 0:
                    trial[pos - 1], trial[pos] = tuple(y - c * x for x, y in zip(a, b)), a
                else:
                    trial[pos - 1], trial[pos] = b, tuple(x - c * y for x, y in zip(a, b))
                moves.append((pos, direction, c == 0))
            if trial[q] not in (target, neg):
                continue
            rest = _search(trial, q + 1, targets, pair)
            if rest is not None:
                return moves + rest[0], [1 if trial[q] == target else -1] + rest[1]
    return None
