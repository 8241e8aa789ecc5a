"""Hypothesis strategies for terms."""

from hypothesis import strategies as st

from cube.term import NULL, Abs, App, Pair, Var

NAMES = st.sampled_from(["a", "b", "f", "g", "foo", "[]", "-", "+", "x y", ";", ",", "->", "-;", "is", "until", "not", "=", ".", "!", "mod", "*", ":-", "?-", "A", "_b", "<-", "<>", "..", "::", "in"])
CONSTS = st.one_of(NAMES, st.integers(-50, 50))


def data_terms(max_var: int = 4, abstractions: bool = False):
    """Terms over a few variables; with ``abstractions``, also λ-terms."""
    leaves = st.one_of(
        st.just(NULL),
        st.builds(Var, st.integers(0, max_var)),
        st.builds(lambda c: App(c, ()), CONSTS),
    )

    def extend(inner):
        parts = [
            st.builds(Pair, inner, inner),
            st.builds(lambda n, xs: App(n, tuple(xs)), NAMES, st.lists(inner, min_size=1, max_size=3)),
        ]
        if abstractions:
            parts.append(st.builds(Abs, st.integers(0, max_var + 2), inner))
        return st.one_of(*parts)

    return st.recursive(leaves, extend, max_leaves=12)
