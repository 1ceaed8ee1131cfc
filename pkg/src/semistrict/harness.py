"""Random generators, independent oracles and metatheory helpers.

The oracles here are deliberately separate code paths from the kernel:
the pasting oracle replays the original derivation rules for pasting
contexts on raw contexts, and the boundary support oracle reads
boundary membership off variable occurrences instead of the tree
inclusions.  Generators are seeded and deterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .syntax import (
    Arrow, Coh, Context, STAR, Star, Sub, Term, Type, Var,
    apply_sub_term, apply_sub_type, compose, dim_type, id_sub,
)
from .trees import (
    Label, ctx_len, disc, label_to_sub, point_positions, tree_dim,
    tree_to_ctx, trunk_height,
)
from .insertion import (
    InsertionRedex, branch_height, canonical_branches, exterior_sub,
    interior_sub, inserted_tree, leaf_height, locally_maximal_positions,
)
from .unbiased import identity_term, unbiased_coh, unbiased_type
from .rewriting import RuleSet, SUA, def_eq, normalize, one_step, sc, ord_lt
from .check import infer_term


@dataclass(frozen=True)
class GenConfig:
    max_depth: int = 2
    max_width: int = 2
    max_nesting: int = 3
    max_dim: int = 3
    seed: int = 0

    def __post_init__(self):
        if min(self.max_depth, self.max_width, self.max_nesting, self.max_dim) < 1:
            raise ValueError("all generator caps must be at least 1")


# --- trees ------------------------------------------------------------------

def gen_tree(rng: random.Random, cfg: GenConfig) -> tuple:
    def go(depth: int) -> tuple:
        if depth >= cfg.max_depth:
            return ()
        width = rng.randint(0, cfg.max_width)
        return tuple(go(depth + 1) for _ in range(width))

    t = go(0)
    return t if t else ((),)  # context generation wants at least one cell


def gen_tree_of_dim(rng: random.Random, d: int, width: int = 2) -> tuple:
    """A random tree of dimension exactly d."""
    if d == 0:
        return ()
    kids = [gen_tree_of_dim(rng, d - 1, width)]
    for _ in range(rng.randint(0, width - 1)):
        kids.append(gen_tree_of_dim(rng, rng.randint(0, d - 1), width))
    rng.shuffle(kids)
    return tuple(kids)


@lru_cache(maxsize=None)
def trees_with_nodes(n: int) -> tuple:
    if n <= 0:
        return ()
    if n == 1:
        return ((),)
    out = []

    def go(remaining: int, acc: list):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for k in range(1, remaining + 1):
            for child in trees_with_nodes(k):
                acc.append(child)
                go(remaining - k, acc)
                acc.pop()

    go(n - 1, [])
    return tuple(out)


def enumerate_trees(max_nodes: int):
    for n in range(1, max_nodes + 1):
        yield from trees_with_nodes(n)


def enumerate_trees_capped(max_depth: int, max_width: int):
    """All trees within depth and width caps (brute force oracle)."""
    def level(depth: int):
        if depth >= max_depth:
            return [()]
        subs = level(depth + 1)
        out = [()]
        layers = [[()]]
        for w in range(1, max_width + 1):
            layers.append([p + (c,) for p in layers[-1] for c in subs])
            out.extend(layers[-1])
        return out

    return level(0)


def gen_branch(rng: random.Random, t: tuple) -> Optional[tuple]:
    bs = canonical_branches(t)
    if not bs:
        return None
    return rng.choice(bs)


# --- well-typed term generation ----------------------------------------------

class TermGen:
    """Bottom-up pool of well-typed terms over a fixed context.

    New terms are identities on pool members, unbiased coherences over
    small trees labelled by endpoint-compatible chains from the pool,
    and rebracketing coherences between two bracketings of a chain.
    """

    def __init__(self, ctx: Context, cfg: GenConfig, rng: random.Random,
                 rules: RuleSet = SUA):
        self.ctx = ctx
        self.cfg = cfg
        self.rng = rng
        self.rules = rules
        self.pool: List[Tuple[Term, Type, int]] = []  # (term, type, nesting)
        self.by_key: Dict[tuple, List[int]] = {}
        self.objects: List[int] = []
        for i in range(len(ctx)):
            self.add(Var(i), nesting=0)

    def add(self, t: Term, nesting: int) -> Optional[int]:
        ty = infer_term(self.ctx, t, self.rules)
        if dim_type(ty) > self.cfg.max_dim:
            return None
        idx = len(self.pool)
        self.pool.append((t, ty, nesting))
        if isinstance(ty, Star):
            self.objects.append(idx)
        else:
            key = (normalize(ty.base, self.rules), normalize(ty.src, self.rules))
            self.by_key.setdefault(key, []).append(idx)
        return idx

    def pick_object(self) -> Term:
        return self.pool[self.rng.choice(self.objects)][0]

    def pick_step(self, at: Term, base: Type) -> Tuple[Term, Term]:
        """A cell leaving `at` over `base`, with its target endpoint."""
        if dim_type(base) + 1 <= self.cfg.max_dim:
            key = (normalize(base, self.rules), normalize(at, self.rules))
            cands = self.by_key.get(key, ())
            if cands and self.rng.random() < 0.8:
                t, ty, _ = self.pool[self.rng.choice(cands)]
                return t, ty.tgt
        return identity_term(base, at), at

    def gen_label(self, tree: tuple, base: Type, start: Term) -> Label:
        points = [start]
        branches = []
        for child in tree:
            cell, nxt = self.pick_step(points[-1], base)
            hom = Arrow(points[-1], base, nxt)
            branches.append(self.gen_label(child, hom, cell))
            points.append(nxt)
        return Label(tuple(points), tuple(branches))

    def gen_sub(self, tree: tuple) -> Sub:
        """A random well-typed substitution out of a pasting tree."""
        return label_to_sub(self.gen_label(tree, STAR, self.pick_object()))

    def small_tree(self, max_dim: int) -> tuple:
        d = self.rng.randint(1, max_dim)
        return gen_tree_of_dim(self.rng, d, self.cfg.max_width)

    def gen_bracketing(self, chain: tuple, lo: int, hi: int) -> Term:
        """Random bracketed composite of arrows lo..hi of a 1-dim chain."""
        pts = point_positions(chain)
        bs = [2 + 2 * i for i in range(len(chain))]
        if hi - lo == 1:
            return Var(bs[lo])
        cut = self.rng.randint(lo + 1, hi - 1)
        left = self.gen_bracketing(chain, lo, cut)
        right = self.gen_bracketing(chain, cut, hi)
        args = (Var(pts[lo]), Var(pts[cut]), left, Var(pts[hi]), right)
        return Coh(((), ()), unbiased_type(1, ((), ())), args)

    def grow(self) -> Optional[Term]:
        roll = self.rng.random()
        if roll < 0.25:
            t, ty, nest = self.pool[self.rng.randrange(len(self.pool))]
            if dim_type(ty) + 1 > self.cfg.max_dim or nest + 1 > self.cfg.max_nesting:
                return None
            out = identity_term(ty, t)
            self.add(out, nest + 1)
            return out
        if roll < 0.85:
            tree = self.small_tree(self.cfg.max_dim)
            n = tree_dim(tree)
            if self.rng.random() < 0.35 and n + 1 <= self.cfg.max_dim:
                n += 1  # unbiased coherence one level up: endo shaped
            lab = self.gen_label(tree, STAR, self.pick_object())
            sub = label_to_sub(lab)
            out = Coh(tree, unbiased_type(n, tree), sub)
            nest = 1 + max((self._nesting(x) for x in sub), default=0)
            if nest > self.cfg.max_nesting:
                return None
            self.add(out, nest)
            return out
        # rebracketing coherence between two bracketings of a chain
        k = self.rng.randint(2, max(2, self.cfg.max_width + 1))
        chain = tuple(() for _ in range(k))
        a = self.gen_bracketing(chain, 0, k)
        b = self.gen_bracketing(chain, 0, k)
        pts = point_positions(chain)
        cell = Arrow(a, Arrow(Var(pts[0]), STAR, Var(pts[-1])), b)
        sub = self.gen_sub(chain)
        out = Coh(chain, cell, sub)
        nest = 1 + max((self._nesting(x) for x in sub), default=0)
        if dim_type(cell) > self.cfg.max_dim or nest > self.cfg.max_nesting:
            return None
        self.add(out, nest)
        return out

    def _nesting(self, t: Term) -> int:
        if isinstance(t, Var):
            return 0
        return 1 + max((self._nesting(a) for a in t.args), default=0)


def gen_welltyped_term(cfg: GenConfig, ctx: Optional[Context] = None,
                       rng: Optional[random.Random] = None) -> Term:
    rng = rng or random.Random(cfg.seed)
    if ctx is None:
        ctx = tree_to_ctx(gen_tree(rng, cfg))
    gen = TermGen(ctx, cfg, rng)
    for _ in range(40):
        t = gen.grow()
        if t is not None and not isinstance(t, Var):
            return t
    raise RuntimeError("generator exhausted under the configured caps")


def gen_population(cfg: GenConfig, count: int):
    """At least `count` distinct well-typed (context, term) pairs."""
    rng = random.Random(cfg.seed)
    out = []
    seen = set()
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 50 * count:
            raise RuntimeError("generator exhausted under the configured caps")
        ctx = tree_to_ctx(gen_tree(rng, cfg))
        gen = TermGen(ctx, cfg, rng)
        for _ in range(25):
            t = gen.grow()
            if t is None or isinstance(t, Var):
                continue
            key = (ctx, t)
            if key not in seen:
                seen.add(key)
                out.append(key)
    return out[:max(count, len(out))]


# --- redex generation ---------------------------------------------------------

def gen_redex(rng: random.Random, cfg: GenConfig) -> InsertionRedex:
    """A random insertion redex built from the canonical pushout square."""
    while True:
        s = gen_tree(rng, cfg)
        branches = canonical_branches(s)
        if branches:
            break
    p = rng.choice(branches)
    lh = leaf_height(s, p)
    bh = branch_height(p)
    if rng.random() < 0.3:
        # identity argument; bh + 1 <= lh always, so the trunk is tall enough
        t = disc(lh - 1)
    else:
        # composite argument: dimension exactly lh with enough trunk
        t = gen_tree_of_dim(rng, lh - bh, cfg.max_width)
        for _ in range(bh):
            t = (t,)
    r = inserted_tree(s, p, t)
    kappa = exterior_sub(s, p, t)
    iota = interior_sub(s, p, t)
    if rng.random() < 0.5:
        mu = id_sub(ctx_len(r))
        gamma = tree_to_ctx(r)
    else:
        gamma = tree_to_ctx(gen_tree(rng, cfg))
        gen = TermGen(gamma, cfg, rng)
        for _ in range(rng.randint(0, 6)):
            gen.grow()
        mu = gen.gen_sub(r)
    return InsertionRedex(s, p, t, compose(kappa, mu), compose(iota, mu))


def enumerate_insertion_points(max_nodes: int):
    """All (S, P, T) insertion points over trees of bounded size."""
    for s in enumerate_trees(max_nodes):
        for p in canonical_branches(s):
            bh = branch_height(p)
            for t in enumerate_trees(max_nodes):
                if trunk_height(t) >= bh:
                    yield s, p, t


# --- maximal equality -----------------------------------------------------------

def eq_max_syntactic(sigma: Sub, tau: Sub, tree: tuple) -> bool:
    """Syntactic agreement of substitutions on locally maximal variables."""
    return all(sigma[i] == tau[i] for i in locally_maximal_positions(tree))


def eq_max_def(sigma: Sub, tau: Sub, tree: tuple, rules: RuleSet = SUA) -> bool:
    return all(def_eq(sigma[i], tau[i], rules)
               for i in locally_maximal_positions(tree))


# --- independent oracles ---------------------------------------------------------

def pasting_oracle(ctx: Context) -> bool:
    """Replay of the original pasting-context derivation rules.

    A derivation starts at the initial object, alternately extends with
    a (target, fill) pair after descending to the matching dimension,
    and must come back down to an object at the end.
    """
    n = len(ctx)
    if n == 0 or not isinstance(ctx.type_of(0), Star):
        return False
    focus_var, focus_ty = 0, STAR
    i = 1
    while i < n:
        ty_y = ctx.type_of(i)
        while dim_type(focus_ty) > dim_type(ty_y):
            if not isinstance(focus_ty.tgt, Var):
                return False
            focus_var, focus_ty = focus_ty.tgt.idx, focus_ty.base
        if ty_y != focus_ty:
            return False
        if i + 1 >= n:
            return False
        fill = ctx.type_of(i + 1)
        if fill != Arrow(Var(focus_var), focus_ty, Var(i)):
            return False
        focus_var, focus_ty = i + 1, fill
        i += 2
    while isinstance(focus_ty, Arrow):
        if not isinstance(focus_ty.tgt, Var):
            return False
        focus_var, focus_ty = focus_ty.tgt.idx, focus_ty.base
    return True


def bd_support_oracle(ctx: Context, n: int, eps: str) -> frozenset:
    """Boundary support read off variable occurrences in a pasting context.

    The n-boundary keeps everything below dimension n, plus the
    dimension-n variables that are not the eps-opposite face of any
    higher cell.
    """
    dims = [dim_type(t) for t in ctx.types]
    covered = set()
    for i, ty in enumerate(ctx.types):
        if dims[i] == n + 1 and isinstance(ty, Arrow):
            face = ty.tgt if eps == "-" else ty.src
            if isinstance(face, Var):
                covered.add(face.idx)
    out = {i for i in range(len(ctx)) if dims[i] < n}
    out |= {i for i in range(len(ctx)) if dims[i] == n and i not in covered}
    return frozenset(out)


# --- reduction graphs ---------------------------------------------------------------

class BudgetExceeded(Exception):
    pass


@dataclass
class ReductionGraph:
    nodes: set
    edges: list  # (source, rule, is_cell_step, target)
    sinks: set


def reduction_graph(t, budget: int = 10_000, rules: RuleSet = SUA) -> ReductionGraph:
    nodes = {t}
    edges = []
    sinks = set()
    frontier = [t]
    while frontier:
        cur = frontier.pop()
        steps = one_step(cur, rules)
        if not steps:
            sinks.add(cur)
            continue
        for st in steps:
            is_cell = "cell" in st.path
            edges.append((cur, st.rule, is_cell, st.result))
            if st.result not in nodes:
                nodes.add(st.result)
                if len(nodes) > budget:
                    raise BudgetExceeded(f"reduction graph exceeded {budget} nodes")
                frontier.append(st.result)
    return ReductionGraph(nodes, edges, sinks)


# --- shrinking -------------------------------------------------------------------

def shrink_tree(t: tuple, still_fails) -> tuple:
    """Greedy tree minimization: drop or inline children while failing."""
    changed = True
    while changed:
        changed = False
        for cand in _tree_shrinks(t):
            if still_fails(cand):
                t = cand
                changed = True
                break
    return t


def _tree_shrinks(t: tuple):
    for i, c in enumerate(t):
        yield t[:i] + t[i + 1:]       # drop child i
        yield c                       # replace by child i
        for sub in _tree_shrinks(c):  # shrink within child i
            yield t[:i] + (sub,) + t[i + 1:]


def shrink_term(t: Term, still_fails) -> Term:
    changed = True
    while changed:
        changed = False
        for cand in _term_shrinks(t):
            if still_fails(cand):
                t = cand
                changed = True
                break
    return t


def _term_shrinks(t: Term):
    if not isinstance(t, Coh):
        return
    for a in t.args:
        yield a
    for i, a in enumerate(t.args):
        for sub in _term_shrinks(a):
            yield Coh(t.head, t.cell, t.args[:i] + (sub,) + t.args[i + 1:])


# --- summary report ---------------------------------------------------------------

def report(seed: int = 0, count: int = 200) -> str:
    cfg = GenConfig(seed=seed)
    population = gen_population(cfg, count)
    rule_counts = {"disc-removal": 0, "endo-coherence-removal": 0,
                   "insertion": 0}

    def tally(step):
        rule_counts[step.rule] += 1

    max_sc = sc(Var(0))
    graph_sizes = []
    for i, (ctx, t) in enumerate(population):
        normalize(t, SUA, trace=tally)
        if ord_lt(max_sc, sc(t)):
            max_sc = sc(t)
        if i < 25:
            try:
                graph_sizes.append(len(reduction_graph(t).nodes))
            except BudgetExceeded:
                graph_sizes.append(-1)
    lines = [("instances", len(population)),
             ("seed", seed),
             ("disc_removal_steps", rule_counts["disc-removal"]),
             ("endo_coherence_removal_steps",
              rule_counts["endo-coherence-removal"]),
             ("insertion_steps", rule_counts["insertion"]),
             ("max_sc", str(max_sc)),
             ("max_graph_nodes", max(graph_sizes, default=0)),
             ("mean_graph_nodes",
              round(sum(graph_sizes) / len(graph_sizes), 2) if graph_sizes else 0)]
    return "".join(f"{k}\t{v}\n" for k, v in lines)
