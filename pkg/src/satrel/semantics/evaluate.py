"""Fast truth evaluation by compiling formulas to closures.

Quantifiers of the shape ∃x(G ∧ ...) and ∀x(G → ...) draw candidates for x
from G when G is an equation or an atom whose predicate has a solver; every
other value of x falsifies G, so skipping it cannot change the result.
Quantifier nodes with few free variables are memoized on the values of their
free variables.
"""

from __future__ import annotations

from ..syntax.ast import (
    And,
    Apply,
    Atom,
    ClassTerm,
    Equal,
    Exists,
    Forall,
    Iff,
    Implies,
    Neg,
    Or,
    Variable,
)
from ..syntax.ops import free_vars
from .structure import Structure, UnassignedVariable

_MISSING = object()


def flatten_and(f) -> list:
    out = []
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, And):
            stack.append(g.right)
            stack.append(g.left)
        else:
            out.append(g)
    return out


class Evaluator:
    def __init__(self, st: Structure, memo_limit: int = 3):
        self.st = st
        self.memo_limit = memo_limit
        self._compiled: dict = {}
        self._terms: dict = {}
        self.infinite = getattr(st, "infinite", False)

    # ---------------------------------------------------------- public

    def truth(self, f, env=None) -> bool:
        env = dict(env or {})
        return self.compile(f)(env)

    def value(self, t, env=None):
        env = dict(env or {})
        return self.compile_term(t)(env)

    # ---------------------------------------------------------- terms

    def compile_term(self, t):
        fn = self._terms.get(t)
        if fn is None:
            fn = self._compile_term(t)
            self._terms[t] = fn
        return fn

    def _compile_term(self, t):
        st = self.st
        if isinstance(t, Variable):
            def var_fn(env, _v=t):
                try:
                    return env[_v]
                except KeyError:
                    raise UnassignedVariable(_v.name) from None
            return var_fn
        if isinstance(t, Apply):
            fn = st.op_fns.get(t.op)
            if fn is None:
                raise KeyError(f"operation {t.op!r} not interpreted in {st.name!r}")
            args = [self.compile_term(a) for a in t.args]
            if not args:
                const = fn()
                return lambda env: const
            if len(args) == 2:
                a0, a1 = args
                return lambda env: fn(a0(env), a1(env))
            return lambda env: fn(*[a(env) for a in args])
        if isinstance(t, ClassTerm):
            body = self.compile(t.body)
            x = t.var

            def class_fn(env):
                saved = env.get(x, _MISSING)
                out = []
                for d in self._domain(x):
                    env[x] = d
                    if body(env):
                        out.append(d)
                _restore(env, x, saved)
                return frozenset(out)
            return class_fn
        raise TypeError(f"not a term: {t!r}")

    def _domain(self, x):
        if self.infinite:
            raise ValueError(f"unguarded quantifier over {x.name} in an infinite structure")
        return self.st.carrier(x.sort)

    # ---------------------------------------------------------- formulas

    def compile(self, f):
        fn = self._compiled.get(f)
        if fn is None:
            fn = self._compile(f)
            self._compiled[f] = fn
        return fn

    def _compile(self, f):
        st = self.st
        if isinstance(f, Atom):
            pfn = st.pred_fns.get(f.pred)
            if pfn is None:
                raise KeyError(f"predicate {f.pred!r} not interpreted in {st.name!r}")
            args = [self.compile_term(a) for a in f.args]
            if not args:
                const = bool(pfn())
                return lambda env: const
            if len(args) == 1:
                (a0,) = args
                return lambda env: bool(pfn(a0(env)))
            if len(args) == 2:
                a0, a1 = args
                return lambda env: bool(pfn(a0(env), a1(env)))
            return lambda env: bool(pfn(*[a(env) for a in args]))
        if isinstance(f, Equal):
            left, right = self.compile_term(f.left), self.compile_term(f.right)
            return lambda env: left(env) == right(env)
        if isinstance(f, Neg):
            b = self.compile(f.body)
            return lambda env: not b(env)
        if isinstance(f, And):
            parts = [self.compile(g) for g in flatten_and(f)]
            return lambda env: all(p(env) for p in parts)
        if isinstance(f, Or):
            left, right = self.compile(f.left), self.compile(f.right)
            return lambda env: left(env) or right(env)
        if isinstance(f, Implies):
            left, right = self.compile(f.left), self.compile(f.right)
            return lambda env: (not left(env)) or right(env)
        if isinstance(f, Iff):
            left, right = self.compile(f.left), self.compile(f.right)
            return lambda env: left(env) == right(env)
        if isinstance(f, (Exists, Forall)):
            return self._compile_quantifier(f)
        raise TypeError(f"not a formula: {f!r}")

    def _guard_candidates(self, x, guards):
        """A function env -> iterable of candidate values for x, or None."""
        st = self.st
        best = None
        for g in guards:
            if isinstance(g, Equal):
                for a, b in ((g.left, g.right), (g.right, g.left)):
                    if a == x and x not in free_vars(b):
                        tb = self.compile_term(b)
                        return lambda env, _t=tb: (_t(env),)
            elif isinstance(g, Atom) and g.pred in st.solvers and g.args:
                positions = [i for i, a in enumerate(g.args) if a == x]
                if len(positions) != 1:
                    continue
                i = positions[0]
                others = [a for k, a in enumerate(g.args) if k != i]
                if any(x in free_vars(a) for a in others):
                    continue
                if best is None:
                    best = (g, i)
        if best is None:
            return None
        g, i = best
        solver = st.solvers[g.pred]
        fns = [None if k == i else self.compile_term(a) for k, a in enumerate(g.args)]

        def cands(env):
            args = tuple(None if fn is None else fn(env) for fn in fns)
            return solver(i, args)
        return cands

    def _compile_quantifier(self, f):
        x = f.var
        is_exists = isinstance(f, Exists)
        if is_exists:
            guards = flatten_and(f.body)
        elif isinstance(f.body, Implies):
            guards = flatten_and(f.body.left)
        else:
            guards = []
        cands = self._guard_candidates(x, guards)
        body = self.compile(f.body)
        sort = x.sort
        st = self.st
        infinite = self.infinite

        def run(env):
            saved = env.get(x, _MISSING)
            domain = None
            if cands is not None:
                domain = cands(env)
                if domain is not None and not infinite:
                    domain = [d for d in domain if st.in_carrier(d, sort)]
            if domain is None:
                domain = self._domain(x)
            result = not is_exists
            for d in domain:
                env[x] = d
                if body(env) == is_exists:
                    result = is_exists
                    break
            _restore(env, x, saved)
            return result

        fv = sorted(free_vars(f), key=lambda v: (v.name, v.sort))
        if len(fv) > self.memo_limit:
            return run
        memo: dict = {}

        def memo_run(env):
            try:
                key = tuple(env[v] for v in fv)
            except KeyError as exc:
                raise UnassignedVariable(exc.args[0].name) from None
            r = memo.get(key)
            if r is None:
                r = run(env)
                memo[key] = r
            return r
        return memo_run


def _restore(env, x, saved):
    if saved is _MISSING:
        env.pop(x, None)
    else:
        env[x] = saved


def evaluate(st: Structure, f, assignment=None) -> bool:
    """Truth of f in st at the assignment (a mapping from variables)."""
    return Evaluator(st).truth(f, assignment)


def eval_term(st: Structure, t, assignment=None):
    """Value of the term t in st at the assignment."""
    missing = free_vars(t) - set(assignment or {})
    if missing:
        raise UnassignedVariable(", ".join(sorted(v.name for v in missing)))
    return Evaluator(st).value(t, assignment)
