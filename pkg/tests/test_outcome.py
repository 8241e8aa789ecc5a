from hypothesis import given
from hypothesis import strategies as st

from cube.outcome import (
    EXHAUSTED, FAIL, Cons, Fuel, Raise, Thunk, catch_transform, force, from_list, if_then_else,
    prefix_le, product, prune, prune_fail, same_final, sum, take, unit,
)
from cube.setting import RationalTerm, Setting
from cube.term import App

# Settings stand in as tokens here: Setting(k) is "solution k".
S = [Setting(k) for k in range(100)]


def err(name="e"):
    return Raise(RationalTerm(App(name), Setting()))


def scopes(o, n=None):
    sols, final = take(o, n)
    return [s.scope for s in sols], final


def counted(ks, final=FAIL, log=None):
    """A lazy outcome that records in ``log`` each element it produces."""
    log = log if log is not None else []

    def at(i):
        log.append(i)
        if i == len(ks):
            return final
        return Cons(S[ks[i]], Thunk(lambda: at(i + 1)))

    return Thunk(lambda: at(0)), log


# -- examples --------------------------------------------------------------

def test_sum():
    assert scopes(sum(FAIL, from_list([S[1]]))) == ([1], FAIL)
    assert scopes(sum(from_list([S[1]]), from_list([S[2]]))) == ([1, 2], FAIL)
    e = err()
    assert scopes(sum(e, from_list([S[1]])))[1] is e
    assert scopes(sum(from_list([S[1]], EXHAUSTED), unit(S[2]))) == ([1], EXHAUSTED)


def test_product():
    b = lambda s: from_list([S[s.scope + 10]])
    assert scopes(product(FAIL, b)) == ([], FAIL)
    assert scopes(product(unit(S[1]), b)) == ([11], FAIL)
    assert scopes(product(from_list([S[1], S[2]]), unit)) == ([1, 2], FAIL)
    assert scopes(product(from_list([S[1]], EXHAUSTED), b)) == ([11], EXHAUSTED)


def test_prune():
    b = lambda s: from_list([S[s.scope + 10]]) if s.scope == 2 else FAIL
    o = from_list([S[1], S[2], S[3]])
    assert scopes(prune(o, b)) == ([1, 12], FAIL)
    assert scopes(prune(FAIL, b)) == ([], FAIL)
    assert scopes(prune(unit(S[1]), lambda s: FAIL)) == ([1], FAIL)


def test_prune_fail():
    b = lambda s: unit(s) if s.scope == 2 else FAIL
    assert scopes(prune_fail(from_list([S[1], S[2], S[3]]), b)) == ([1], FAIL)
    assert scopes(prune_fail(FAIL, b)) == ([], FAIL)
    assert scopes(prune_fail(unit(S[1]), lambda s: FAIL)) == ([1], FAIL)


def test_condition_exception_absorbs():
    e = err()
    assert scopes(prune(from_list([S[1], S[2]]), lambda s: e)) == ([], e)


def test_if_then_else():
    then = lambda s: unit(S[s.scope + 10])
    assert scopes(if_then_else(from_list([S[1], S[2]]), then, unit(S[9]))) == ([11], FAIL)
    assert scopes(if_then_else(FAIL, then, unit(S[9]))) == ([9], FAIL)
    assert scopes(if_then_else(EXHAUSTED, then, unit(S[9]))) == ([], EXHAUSTED)


def test_catch_transform():
    e, other = err("e"), err("other")
    match = lambda p: S[50] if p.term == App("e") else None
    handler = lambda s: unit(S[s.scope + 1])
    assert scopes(catch_transform(from_list([S[1]], e), match, handler)) == ([1, 51], FAIL)
    assert scopes(catch_transform(FAIL, match, handler)) == ([], FAIL)
    got = scopes(catch_transform(from_list([S[1]], other), match, handler))
    assert got == ([1], other)
    assert scopes(catch_transform(EXHAUSTED, match, handler)) == ([], EXHAUSTED)


def test_prefix_le():
    a = from_list([S[1]], EXHAUSTED)
    b = from_list([S[1], S[2]])
    assert prefix_le(a, b, 10)
    assert prefix_le(b, b, 10)
    assert not prefix_le(from_list([S[1]]), b, 10)
    assert not prefix_le(b, a, 10)


def test_fuel_runs_out():
    def ones():
        return Cons(S[1], Thunk(ones, fuel))

    fuel = Fuel(5)
    sols, final = take(Thunk(ones, fuel))
    assert final is EXHAUSTED and len(sols) == 5


def test_deep_nesting_does_not_overflow():
    o = FAIL
    for _ in range(50_000):
        o = sum(o, FAIL)
    assert force(o) is FAIL
    o = unit(S[0])
    for _ in range(50_000):
        o = product(o, unit)
    assert scopes(o) == ([0], FAIL)


def test_forcing_is_memoized():
    o, log = counted([1, 2, 3])
    p = sum(o, FAIL)
    assert scopes(p) == ([1, 2, 3], FAIL)
    before = len(log)
    assert scopes(p) == ([1, 2, 3], FAIL)
    assert len(log) == before


# -- properties ------------------------------------------------------------

finals = st.sampled_from([FAIL, EXHAUSTED, err()])
outcomes = st.tuples(st.lists(st.integers(0, 9), max_size=4), finals)
tables = st.dictionaries(st.integers(0, 99), outcomes)


def build(shape):
    ks, final = shape
    return from_list([S[k] for k in ks], final)


def behaviour(table, default):
    """A behaviour given by a table from solution token to outcome."""
    return lambda s: build(table.get(s.scope, default))


def same(o1, o2):
    a, af = take(o1)
    b, bf = take(o2)
    return [s.scope for s in a] == [s.scope for s in b] and same_final(af, bf)


@given(outcomes, outcomes, outcomes)
def test_sum_is_associative(a, b, c):
    assert same(sum(sum(build(a), build(b)), build(c)), sum(build(a), sum(build(b), build(c))))


@given(outcomes, outcomes, tables, outcomes)
def test_product_distributes_over_sum(a, b, table, default):
    k = behaviour(table, default)
    assert same(product(sum(build(a), build(b)), k),
                sum(product(build(a), k), product(build(b), k)))


@given(outcomes)
def test_unit_laws(a):
    assert same(product(build(a), unit), build(a))
    assert same(sum(FAIL, build(a)), build(a))
    assert same(sum(build(a), FAIL), build(a))
    assert same(prune(build(a), lambda s: FAIL), build(a))


@given(outcomes, tables, outcomes)
def test_prune_is_a_prefix(a, table, default):
    k = behaviour(table, default)
    full, _ = take(build(a))
    got, final = take(prune_fail(build(a), k))
    assert [s.scope for s in got] == [s.scope for s in full[: len(got)]]
    kept, _ = take(prune(build(a), k))
    assert len(kept) >= len(got)


@given(st.lists(st.integers(0, 9), min_size=1, max_size=6), st.integers(1, 6))
def test_operators_force_only_what_is_taken(ks, n):
    m = min(n, len(ks))

    def never():
        raise AssertionError("right operand forced")

    o, log = counted(ks)
    take(sum(o, never), m)
    assert max(log) == m - 1
    o, log = counted(ks)
    take(product(o, unit), m)
    assert max(log) == m - 1
    o, log = counted(ks)
    take(prune(o, lambda s: FAIL), 1)
    assert log == [0]


@given(outcomes, st.integers(0, 30), st.integers(0, 30))
def test_fuel_order(a, f1, f2):
    f1, f2 = min(f1, f2), max(f1, f2)

    def slow(fuel):
        ks, final = a

        def at(i):
            return final if i == len(ks) else Cons(S[ks[i]], Thunk(lambda: at(i + 1), fuel))

        return Thunk(lambda: at(0), fuel)

    assert prefix_le(slow(Fuel(f1)), slow(Fuel(f2)), 10)
