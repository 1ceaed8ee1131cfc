"""Bidirectional typing with conversion by normalization.

Coherences are typed by one of two support disciplines: a composition
rule, where the source and target of the cell type are supported by the
matching boundary of the head tree, and a full rule, where both sides
are supported by the entire head context.  Type equality demanded by a
rule is discharged by def_eq.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .syntax import (
    Arrow, Coh, Context, KernelError, Star, Sub, Term, Type, Var,
    apply_sub_type, dim_type, free_vars, support,
)
from .trees import tree_dim, tree_inc, tree_to_ctx
from .rewriting import RuleSet, SUA, def_eq


@dataclass
class TypingError(Exception):
    kind: str
    detail: str
    location: Optional[object] = None
    expected: object = None
    actual: object = None

    def __str__(self):
        return f"{self.kind}: {self.detail}"


_INFER_CACHE: dict = {}


def clear_cache():
    _INFER_CACHE.clear()


def check_ctx(ctx: Context, rules: RuleSet = SUA) -> None:
    for i in range(len(ctx)):
        prefix = Context(ctx.entries[:i])
        ty = ctx.type_of(i)
        bad = [v for v in free_vars(ty) if not 0 <= v < i]
        if bad:
            raise TypingError("UnknownVariable",
                              f"entry {ctx.name_of(i)} refers to variable {bad[0]} "
                              f"outside the preceding telescope")
        check_type(prefix, ty, rules)


def check_type(ctx: Context, a: Type, rules: RuleSet = SUA) -> None:
    if isinstance(a, Star):
        return
    if not isinstance(a, Arrow):
        raise KernelError(f"not a type: {a!r}")
    check_type(ctx, a.base, rules)
    for side, t in (("source", a.src), ("target", a.tgt)):
        got = infer_term(ctx, t, rules)
        if not def_eq(got, a.base, rules):
            raise TypingError("TypeMismatch",
                              f"{side} of arrow has type {got!r}, expected {a.base!r}",
                              expected=a.base, actual=got)


def boundary_support(tree, eps: str, n: int) -> frozenset:
    """Support of the n-dimensional eps-inclusion of a pasting tree."""
    ctx = tree_to_ctx(tree)
    return support(ctx, tree_inc(eps, n, tree))


def infer_term(ctx: Context, t: Term, rules: RuleSet = SUA) -> Type:
    key = (ctx, t, rules)
    hit = _INFER_CACHE.get(key)
    if hit is not None:
        return hit
    out = _infer(ctx, t, rules)
    _INFER_CACHE[key] = out
    return out


def _infer(ctx: Context, t: Term, rules: RuleSet) -> Type:
    if isinstance(t, Var):
        if not 0 <= t.idx < len(ctx):
            raise TypingError("UnknownVariable",
                              f"variable {t.idx} not bound in a context of "
                              f"length {len(ctx)}")
        return ctx.type_of(t.idx)
    if not isinstance(t, Coh):
        raise KernelError(f"not a term: {t!r}")
    head_ctx = tree_to_ctx(t.head)
    cell = t.cell
    if not isinstance(cell, Arrow):
        raise TypingError("TypeMismatch",
                          "a coherence cell must be an arrow type",
                          expected="arrow type", actual=cell)
    check_type(head_ctx, cell, rules)
    check_sub(ctx, t.args, head_ctx, rules)
    _check_support(t.head, head_ctx, cell)
    return apply_sub_type(cell, t.args)


def _check_support(tree, head_ctx: Context, cell: Arrow) -> None:
    src_supp = support(head_ctx, cell.src)
    tgt_supp = support(head_ctx, cell.tgt)
    everything = frozenset(range(len(head_ctx)))
    if src_supp == everything and tgt_supp == everything:
        return
    d = tree_dim(tree)
    if d >= 1:
        want_src = boundary_support(tree, "-", d - 1)
        want_tgt = boundary_support(tree, "+", d - 1)
        if src_supp == want_src and tgt_supp == want_tgt:
            return
        side, want, got = (("source", want_src, src_supp)
                           if src_supp != want_src
                           else ("target", want_tgt, tgt_supp))
    else:
        side, want, got = "source", everything, src_supp
        if src_supp == everything:
            side, got = "target", tgt_supp
    names = head_ctx.names
    fmt = lambda s: "{" + ",".join(names[i] for i in sorted(s)) + "}"
    raise TypingError(
        "SupportMismatch",
        f"{side} support {fmt(got)} matches neither the {side} boundary "
        f"{fmt(want)} nor the full context",
        expected=want, actual=got)


def check_sub(ctx: Context, sub: Sub, src_ctx: Context,
              rules: RuleSet = SUA) -> None:
    if len(sub) != len(src_ctx):
        raise TypingError("ArityMismatch",
                          f"substitution has {len(sub)} entries for a context "
                          f"of length {len(src_ctx)}")
    for i, t in enumerate(sub):
        want = apply_sub_type(src_ctx.type_of(i), sub)
        got = infer_term(ctx, t, rules)
        if not def_eq(got, want, rules):
            raise TypingError(
                "TypeMismatch",
                f"argument {i} ({src_ctx.name_of(i)}) has type {got!r}, "
                f"expected {want!r}",
                expected=want, actual=got, location=i)


def decide_eq(ctx: Context, a: Term, b: Term, rules: RuleSet = SUA) -> bool:
    infer_term(ctx, a, rules)
    infer_term(ctx, b, rules)
    return def_eq(a, b, rules)
