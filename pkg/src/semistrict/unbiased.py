"""Unbiased coherences, terms and types, plus identities and recognizers.

The unbiased operations compose every cell of a pasting diagram at
once.  Recognizers re-derive the unbiased type for a candidate's head
tree and compare syntactically, so terms stay plain first-order data
with no provenance flags.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional, Tuple

from .syntax import (
    Arrow, Coh, KernelError, STAR, Star, Sub, Term, Tree, Type, Var,
    apply_sub_term, apply_sub_type, dim_type, id_sub,
)
from . import trees
from .trees import ctx_len, disc, is_linear, tree_bd, tree_dim, tree_inc


@lru_cache(maxsize=None)
def unbiased_type(n: int, t: Tree) -> Type:
    if n <= 0:
        return STAR
    b = tree_bd(n - 1, t)
    s = apply_sub_term(unbiased_term(n - 1, b), tree_inc("-", n - 1, t))
    u = apply_sub_term(unbiased_term(n - 1, b), tree_inc("+", n - 1, t))
    return Arrow(s, unbiased_type(n - 1, t), u)


@lru_cache(maxsize=None)
def unbiased_term(n: int, t: Tree) -> Term:
    if is_linear(t) and tree_dim(t) == n:
        return Var(ctx_len(t) - 1)  # the top variable of a disc
    return unbiased_coh(n, t)


@lru_cache(maxsize=None)
def unbiased_coh(n: int, t: Tree) -> Term:
    return Coh(t, unbiased_type(n, t), id_sub(ctx_len(t)))


def disc_sub(a: Type, t: Term) -> Sub:
    """The substitution from a disc listing the iterated boundary of a, then t."""
    levels = []
    while isinstance(a, Arrow):
        levels.append((a.src, a.tgt))
        a = a.base
    vec = []
    for s, u in reversed(levels):
        vec.append(s)
        vec.append(u)
    vec.append(t)
    return tuple(vec)


def match_disc_sub(sub: Sub) -> Tuple[Type, Term]:
    """Inverse of disc_sub for substitutions out of a disc."""
    if len(sub) % 2 == 0:
        raise KernelError(f"disc substitution must have odd arity, got {len(sub)}")
    a: Type = STAR
    for i in range((len(sub) - 1) // 2):
        a = Arrow(sub[2 * i], a, sub[2 * i + 1])
    return a, sub[-1]


def identity_term(a: Type, s: Term) -> Term:
    """The canonical identity cell on s at type a."""
    n = dim_type(a)
    return apply_sub_term(unbiased_coh(n + 1, disc(n)), disc_sub(a, s))


def is_identity(t: Term) -> bool:
    if not isinstance(t, Coh):
        return False
    if not is_linear(t.head):
        return False
    return t.cell == unbiased_type(tree_dim(t.head) + 1, t.head)


def is_unbiased_coh(t: Term) -> Optional[Tuple[int, Tree, Sub]]:
    """Match t against an unbiased coherence; returns (n, head, args)."""
    if not isinstance(t, Coh):
        return None
    n = dim_type(t.cell)
    if t.cell == unbiased_type(n, t.head):
        return n, t.head, t.args
    return None


def is_unbiased_composite(t: Term) -> bool:
    m = is_unbiased_coh(t)
    return m is not None and m[0] == tree_dim(m[1])
