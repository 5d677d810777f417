"""Propositional LK⁻ search on interned formulas, for exhaustive runs.

Formulas are integers indexing a table of (tag, left, right) triples.  The
decision procedure applies the same invertible rules as ``search`` (principal
formula removed, one-premise rules first) and memoizes on the set sequent,
so sub-searches shared between many sequents are decided once.  Truth tables
are bitmasks over the 2^n valuations of the atoms.
"""

from __future__ import annotations

from ..syntax.ast import And, Atom, Iff, Implies, Neg, Or

ATOM, NEG, AND, OR, IMP, IFF = range(6)
_CLASS = {Neg: NEG, And: AND, Or: OR, Implies: IMP, Iff: IFF}
_BUILD = {NEG: Neg, AND: And, OR: Or, IMP: Implies, IFF: Iff}


class PropTable:
    def __init__(self, atoms=("p", "q", "r")):
        self.atoms = tuple(atoms)
        self.n = len(self.atoms)
        self.full = (1 << (1 << self.n)) - 1
        self.nodes: list = []
        self.masks: list = []
        self.size: list = []
        self.index: dict = {}
        for i, _ in enumerate(self.atoms):
            m = 0
            for v in range(1 << self.n):
                if v >> i & 1:
                    m |= 1 << v
            self._add((ATOM, i, -1), m, 0)

    def _add(self, node, mask, size):
        k = len(self.nodes)
        self.nodes.append(node)
        self.masks.append(mask)
        self.size.append(size)
        self.index[node] = k
        return k

    def mk(self, tag, a, b=-1) -> int:
        node = (tag, a, b)
        k = self.index.get(node)
        if k is not None:
            return k
        return self._add(node, self.combine(tag, self.masks[a], self.masks[b] if b >= 0 else 0),
                         1 + self.size[a] + (self.size[b] if b >= 0 else 0))

    def combine(self, tag, ma, mb):
        full = self.full
        if tag == NEG:
            return full ^ ma
        if tag == AND:
            return ma & mb
        if tag == OR:
            return ma | mb
        if tag == IMP:
            return (full ^ ma) | mb
        return full ^ (ma ^ mb)

    def from_formula(self, f) -> int:
        if isinstance(f, Atom) and not f.args:
            return self.atoms.index(f.pred)
        tag = _CLASS[type(f)]
        if tag == NEG:
            return self.mk(NEG, self.from_formula(f.body))
        return self.mk(tag, self.from_formula(f.left), self.from_formula(f.right))

    def to_formula(self, k):
        tag, a, b = self.nodes[k]
        if tag == ATOM:
            return Atom(self.atoms[a])
        if tag == NEG:
            return Neg(self.to_formula(a))
        return _BUILD[tag](self.to_formula(a), self.to_formula(b))

    def valid(self, ante, succ) -> bool:
        """Truth-table validity of the sequent ante ⇒ succ."""
        m = self.full
        for a in ante:
            m &= self.masks[a]
        for s in succ:
            m &= self.full ^ self.masks[s]
        return m == 0


class PropDecider:
    """LK⁻ derivability of propositional set sequents (decision mode)."""

    def __init__(self, table: PropTable):
        self.t = table
        self.memo: dict = {}

    def derivable(self, ante, succ) -> bool:
        G, D = frozenset(ante), frozenset(succ)
        key = (G, D)
        hit = self.memo.get(key)
        if hit is None:
            hit = self.memo[key] = self._decide(G, D)
        return hit

    def _decide(self, G, D) -> bool:
        if not G.isdisjoint(D):
            return True
        nodes = self.t.nodes
        best = None
        for side, pool in ((0, G), (1, D)):
            for k in pool:
                tag = nodes[k][0]
                if tag == ATOM:
                    continue
                two = (side == 0 and tag in (OR, IMP)) or (side == 1 and tag == AND) or tag == IFF
                if not two:
                    best = (side, k)
                    break
                if best is None:
                    best = (side, k)
            if best is not None and not self._branching(best):
                break
        if best is None:
            return False
        side, k = best
        tag, a, b = nodes[k]
        if side == 0:
            g = G - {k}
            if tag == NEG:
                return self.derivable(g, D | {a})
            if tag == AND:
                return self.derivable(g | {a, b}, D)
            if tag == OR:
                return self.derivable(g | {a}, D) and self.derivable(g | {b}, D)
            if tag == IMP:
                return self.derivable(g, D | {a}) and self.derivable(g | {b}, D)
            return self.derivable(g, D | {a, b}) and self.derivable(g | {a, b}, D)
        d = D - {k}
        if tag == NEG:
            return self.derivable(G | {a}, d)
        if tag == AND:
            return self.derivable(G, d | {a}) and self.derivable(G, d | {b})
        if tag == OR:
            return self.derivable(G, d | {a, b})
        if tag == IMP:
            return self.derivable(G | {a}, d | {b})
        return self.derivable(G | {a}, d | {b}) and self.derivable(G | {b}, d | {a})

    def _branching(self, best) -> bool:
        side, k = best
        tag = self.t.nodes[k][0]
        return (side == 0 and tag in (OR, IMP)) or (side == 1 and tag == AND) or tag == IFF


def _merge_occ(oa, ob):
    return oa + tuple(x for x in ob if x not in oa)


def _canonical(occ) -> bool:
    return occ == tuple(range(len(occ)))


def exhaustive_check(max_connectives: int, tags=(AND, OR, IMP), atoms=("p", "q", "r"), memo_cap: int = 1_000_000):
    """Compare LK⁻ derivability with truth-table validity for every ⇒ φ.

    φ ranges over formulas with at most ``max_connectives`` connectives
    (¬ plus ``tags``), deduplicated up to renaming atoms by first
    occurrence.  Formulas of the top size are not interned: the root rule
    is applied directly to their immediate subformulas.  Returns
    (number of sequents, list of disagreeing formulas).
    """
    t = PropTable(atoms)
    d = PropDecider(t)
    occ = [(i,) for i in range(len(atoms))]
    layers = [list(range(len(atoms)))]
    count, bad = 0, []

    def record(ok, k=None, tag=None, a=None, b=None):
        nonlocal count
        count += 1
        if not ok and len(bad) < 20:
            bad.append(t.to_formula(k) if k is not None else
                       (_BUILD[tag](t.to_formula(a)) if tag == NEG else _BUILD[tag](t.to_formula(a), t.to_formula(b))))
        if len(d.memo) > memo_cap:
            d.memo.clear()

    for k in layers[0]:
        if _canonical(occ[k]):
            record(d.derivable((), (k,)) == t.valid((), (k,)), k)
    for n in range(1, max_connectives + 1):
        top = n == max_connectives
        layer = []
        for tag, a, b in _candidates(n, layers, occ, tags, top):
            o = occ[a] if b < 0 else _merge_occ(occ[a], occ[b])
            if not top:
                before = len(t.nodes)
                k = t.mk(tag, a, b)
                if len(t.nodes) > before:
                    occ.append(o)
                    layer.append(k)
                    if _canonical(o):
                        record(d.derivable((), (k,)) == t.valid((), (k,)), k)
                continue
            if not _canonical(o):
                continue
            mask = t.combine(tag, t.masks[a], t.masks[b] if b >= 0 else 0)
            record(_root_derivable(d, tag, a, b) == (mask == t.full), tag=tag, a=a, b=b)
        layers.append(layer)
    return count, bad


def _candidates(n, layers, occ, tags, top):
    for a in layers[n - 1]:
        yield NEG, a, -1
    for k in range(n):
        for a in layers[k]:
            if top and not _canonical(occ[a]):
                continue  # the left subformula fixes the first atoms
            for b in layers[n - 1 - k]:
                for tag in tags:
                    yield tag, a, b


def _root_derivable(d: PropDecider, tag, a, b) -> bool:
    """⇒ φ for φ = tag(a, b), by the right rule for the main connective."""
    if tag == NEG:
        return d.derivable((a,), ())
    if tag == AND:
        return d.derivable((), (a,)) and d.derivable((), (b,))
    if tag == OR:
        return d.derivable((), (a, b))
    if tag == IMP:
        return d.derivable((a,), (b,))
    return d.derivable((a,), (b,)) and d.derivable((b,), (a,))


def _formula_sets(pool, budget, start=0):
    """Sets of (id, size) from pool (sorted by id) with total size ≤ budget."""
    yield ()
    for i in range(start, len(pool)):
        k, size = pool[i]
        if size <= budget:
            for rest in _formula_sets(pool, budget - size, i + 1):
                yield ((k, size),) + rest


def exhaustive_sequents(max_total: int, tags=(AND, OR, IMP, IFF), atoms=("p", "q", "r")):
    """Two-sided version: Γ ⇒ Δ with any atoms on either side and non-atomic
    formulas carrying at most ``max_total`` connectives in total, deduplicated
    up to renaming atoms.  Returns (number of sequents, disagreements)."""
    from itertools import combinations, permutations

    t = PropTable(atoms)
    n = len(atoms)
    layers = [list(range(n))]
    for size in range(1, max_total + 1):
        layer = [t.mk(NEG, a) for a in layers[size - 1]]
        for k in range(size):
            for a in layers[k]:
                for b in layers[size - 1 - k]:
                    layer.extend(t.mk(tag, a, b) for tag in tags)
        layers.append(layer)
    pool = sorted((k, size) for size in range(1, max_total + 1) for k in layers[size])
    perms = []
    for perm in permutations(range(n)):
        m = {}
        for k, (tag, a, b) in enumerate(t.nodes):
            m[k] = perm[a] if tag == ATOM else t.mk(tag, m[a], m[b] if b >= 0 else -1)
        perms.append(m)
    atom_sets = [c for r in range(n + 1) for c in combinations(range(n), r)]
    d = PropDecider(t)
    count, bad = 0, []
    for left in _formula_sets(pool, max_total):
        used = sum(s for _, s in left)
        for right in _formula_sets(pool, max_total - used):
            for la in atom_sets:
                for ra in atom_sets:
                    G = tuple(sorted(la + tuple(k for k, _ in left)))
                    D = tuple(sorted(ra + tuple(k for k, _ in right)))
                    key = (G, D)
                    if any((tuple(sorted(m[k] for k in G)), tuple(sorted(m[k] for k in D))) < key for m in perms):
                        continue
                    count += 1
                    if d.derivable(G, D) != t.valid(G, D) and len(bad) < 20:
                        bad.append(([t.to_formula(k) for k in G], [t.to_formula(k) for k in D]))
    return count, bad
