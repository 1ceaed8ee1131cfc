"""Canonical pretty printer for the surface grammar.

Printing is deterministic: coherence heads render in the paren pasting
notation with generated names, and applications list only the locally
maximal arguments, which reparse to the same term through implicit
argument inference.
"""

from __future__ import annotations

from .syntax import Arrow, Coh, Context, KernelError, Star, Term, Type, Var
from .trees import Tree, tree_to_ctx
from .insertion import locally_maximal_positions


def fmt_ps(tree: Tree, names=None) -> str:
    """Paren pasting notation, e.g. (x(f)y(g)z) for the two-arrow tree."""
    if names is None:
        names = tree_to_ctx(tree).names
    from .trees import point_positions, block_starts

    def emit(t: Tree, offset: int) -> str:
        if not t:
            return names[offset]
        pts = point_positions(t)
        bs = block_starts(t)
        out = names[offset + pts[0]]
        for i, child in enumerate(t):
            out += "(" + emit(child, offset + bs[i]) + ")"
            out += names[offset + pts[i + 1]]
        return out

    return "(" + emit(tree, 0) + ")"


def fmt_term(t: Term, names) -> str:
    if isinstance(t, Var):
        return names[t.idx]
    if isinstance(t, Coh):
        head_ctx = tree_to_ctx(t.head)
        hnames = head_ctx.names
        ps = fmt_ps(t.head, hnames)
        ty = fmt_type(t.cell, hnames)
        args = [fmt_atom(t.args[i], names)
                for i in locally_maximal_positions(t.head)]
        body = f"coh ({ps[1:-1]} : {ty})"
        return " ".join([body] + args)
    raise KernelError(f"not a term: {t!r}")


def fmt_atom(t: Term, names) -> str:
    s = fmt_term(t, names)
    return s if " " not in s else "(" + s + ")"


def fmt_type(a: Type, names) -> str:
    if isinstance(a, Star):
        return "*"
    if isinstance(a, Arrow):
        return f"{fmt_term(a.src, names)} -> {fmt_term(a.tgt, names)}"
    raise KernelError(f"not a type: {a!r}")


def fmt_type_full(a: Type, names) -> str:
    """Fully parenthesized form with explicit bases, for diagnostics."""
    if isinstance(a, Star):
        return "*"
    return (f"({fmt_term(a.src, names)} -> {fmt_term(a.tgt, names)} "
            f"over {fmt_type_full(a.base, names)})")


def fmt_ctx(ctx: Context) -> str:
    bits = []
    for i, (n, ty) in enumerate(ctx.entries):
        prefix = Context(ctx.entries[:i])
        bits.append(f"({n} : {fmt_type(ty, prefix.names)})")
    return " ".join(bits)
