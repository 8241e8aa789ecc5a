"""Lazy outcome streams and the operators that combine them.

An outcome is a sequence of solution settings closed by a final marker:
``FAIL``, ``EXHAUSTED`` (the fuel ran out; stands in for divergence) or
``Raise(payload)``.  Streams are built from memoizing ``Lazy`` nodes, so a
forced prefix can be replayed any number of times without recomputation.

``force`` runs every lazy node through one loop with an explicit frame
stack.  Operators never force their inputs directly; they ask the loop
for a child's value by returning ``Need(child, resume)``.  That keeps
arbitrarily deep nesting (long recursions build long chains of pending
sums) off the Python call stack.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Optional, Union

from .setting import RationalTerm, Setting, equivalent, rational_equal


class Outcome:
    __slots__ = ()


class _Fail(Outcome):
    __slots__ = ()

    def __repr__(self):
        return "FAIL"


class _Exhausted(Outcome):
    __slots__ = ()

    def __repr__(self):
        return "EXHAUSTED"


FAIL = _Fail()
EXHAUSTED = _Exhausted()


class Raise(Outcome):
    __slots__ = ("payload",)

    def __init__(self, payload: RationalTerm):
        self.payload = payload

    def __repr__(self):
        return f"Raise({self.payload.term!r})"


class Cons(Outcome):
    __slots__ = ("head", "tail")

    def __init__(self, head: Setting, tail: Outcome):
        self.head = head
        self.tail = tail

    def __repr__(self):
        return f"Cons({self.head!r}, ...)"


def is_final(o: Outcome) -> bool:
    return o is FAIL or o is EXHAUSTED or isinstance(o, Raise)


class Fuel:
    """Step budget shared by every lazy node of one evaluation."""

    __slots__ = ("remaining",)

    def __init__(self, remaining: int):
        self.remaining = remaining

    def __repr__(self):
        return f"Fuel({self.remaining})"


class Need:
    __slots__ = ("child", "resume")

    def __init__(self, child: Outcome, resume: Callable[[Outcome], object]):
        self.child = child
        self.resume = resume


Step = Union[Outcome, Need]
Behaviour = Callable[[Setting], Outcome]
Deferred = Callable[[], Outcome]


class Lazy(Outcome):
    __slots__ = ("_value", "fuel")

    def __init__(self, fuel: Optional[Fuel] = None):
        self._value: Optional[Outcome] = None
        self.fuel = fuel

    def step(self) -> Step:
        raise NotImplementedError

    @property
    def forced(self) -> bool:
        return self._value is not None


def force(o: Outcome) -> Outcome:
    """Evaluate ``o`` to a mature node: a ``Cons`` or a final marker."""
    if not isinstance(o, Lazy):
        return o
    if o._value is not None:
        return o._value
    frames: list[tuple[list[Lazy], Callable]] = []
    owners: list[Lazy] = []
    r: object = o
    while True:
        if isinstance(r, Need):
            frames.append((owners, r.resume))
            owners = []
            r = r.child
            continue
        if isinstance(r, Lazy):
            v = r._value
            if v is None:
                owners.append(r)
                f = r.fuel
                if f is not None:
                    if f.remaining <= 0:
                        r = EXHAUSTED
                        continue
                    f.remaining -= 1
                r = r.step()
                continue
            r = v
        for n in owners:
            n._value = r
        if not frames:
            return r
        owners, resume = frames.pop()
        r = resume(r)


class Thunk(Lazy):
    __slots__ = ("fn",)

    def __init__(self, fn: Deferred, fuel: Optional[Fuel] = None):
        super().__init__(fuel)
        self.fn = fn

    def step(self):
        fn, self.fn = self.fn, None
        return fn()


def _deferred(o: Union[Outcome, Deferred]) -> Deferred:
    if isinstance(o, Outcome):
        return lambda: o
    return o


class Sum(Lazy):
    __slots__ = ("left", "right")

    def __init__(self, left: Outcome, right: Deferred, fuel=None):
        super().__init__(fuel)
        self.left = left
        self.right = right

    def step(self):
        return Need(self.left, self._resume)

    def _resume(self, v):
        if v is FAIL:
            return self.right()
        if isinstance(v, Cons):
            return Cons(v.head, Sum(v.tail, self.right, self.fuel))
        return v


class Product(Lazy):
    __slots__ = ("left", "behaviour")

    def __init__(self, left: Outcome, behaviour: Behaviour, fuel=None):
        super().__init__(fuel)
        self.left = left
        self.behaviour = behaviour

    def step(self):
        return Need(self.left, self._resume)

    def _resume(self, v):
        if isinstance(v, Cons):
            rest = v.tail
            return Sum(self.behaviour(v.head),
                       lambda: Product(rest, self.behaviour, self.fuel), self.fuel)
        return v


class Prune(Lazy):
    """Pass solutions on until the condition first succeeds on one.

    With ``keep_last`` the condition's first solution closes the outcome
    (``until``); without it the outcome just fails there (``unless``).
    """

    __slots__ = ("left", "condition", "keep_last")

    def __init__(self, left: Outcome, condition: Behaviour, keep_last=True, fuel=None):
        super().__init__(fuel)
        self.left = left
        self.condition = condition
        self.keep_last = keep_last

    def step(self):
        return Need(self.left, self._on_solution)

    def _on_solution(self, v):
        if not isinstance(v, Cons):
            return v
        return Need(self.condition(v.head), lambda c: self._on_condition(v, c))

    def _on_condition(self, v: Cons, c):
        if c is FAIL:
            return Cons(v.head, Prune(v.tail, self.condition, self.keep_last, self.fuel))
        if isinstance(c, Cons):
            return Cons(c.head, FAIL) if self.keep_last else FAIL
        return c


class IfThenElse(Lazy):
    __slots__ = ("cond", "then", "otherwise")

    def __init__(self, cond: Outcome, then: Behaviour, otherwise: Deferred, fuel=None):
        super().__init__(fuel)
        self.cond = cond
        self.then = then
        self.otherwise = otherwise

    def step(self):
        return Need(self.cond, self._resume)

    def _resume(self, v):
        if isinstance(v, Cons):
            return self.then(v.head)
        if v is FAIL:
            return self.otherwise()
        return v


Matcher = Callable[[RationalTerm], Optional[Setting]]


class Catch(Lazy):
    __slots__ = ("inner", "matcher", "handler")

    def __init__(self, inner: Outcome, matcher: Matcher, handler: Behaviour, fuel=None):
        super().__init__(fuel)
        self.inner = inner
        self.matcher = matcher
        self.handler = handler

    def step(self):
        return Need(self.inner, self._resume)

    def _resume(self, v):
        if isinstance(v, Cons):
            return Cons(v.head, Catch(v.tail, self.matcher, self.handler, self.fuel))
        if isinstance(v, Raise):
            caught = self.matcher(v.payload)
            if caught is None:
                return v
            return self.handler(caught)
        return v


def unit(s: Setting) -> Outcome:
    """The idle successful outcome: ``s`` then failure."""
    return Cons(s, FAIL)


def from_list(settings: Iterable[Setting], final: Outcome = FAIL) -> Outcome:
    out = final
    for s in reversed(list(settings)):
        out = Cons(s, out)
    return out


def sum(o1: Outcome, o2: Union[Outcome, Deferred], fuel=None) -> Outcome:
    return Sum(o1, _deferred(o2), fuel)


def product(o: Outcome, b: Behaviour, fuel=None) -> Outcome:
    return Product(o, b, fuel)


def prune(o: Outcome, b: Behaviour, fuel=None) -> Outcome:
    return Prune(o, b, True, fuel)


def prune_fail(o: Outcome, b: Behaviour, fuel=None) -> Outcome:
    return Prune(o, b, False, fuel)


def if_then_else(cond: Outcome, then: Behaviour, otherwise: Union[Outcome, Deferred], fuel=None):
    return IfThenElse(cond, then, _deferred(otherwise), fuel)


def catch_transform(o: Outcome, matcher: Matcher, handler: Behaviour, fuel=None) -> Outcome:
    return Catch(o, matcher, handler, fuel)


def solutions(o: Outcome) -> Iterator[Setting]:
    while True:
        o = force(o)
        if not isinstance(o, Cons):
            return
        yield o.head
        o = o.tail


def take(o: Outcome, n: Optional[int] = None) -> tuple[list[Setting], Optional[Outcome]]:
    """Force up to ``n`` solutions.

    Returns the solutions and the final marker, or ``None`` as the marker
    when ``n`` solutions were taken and the rest was left unforced.
    """
    out = []
    while n is None or len(out) < n:
        o = force(o)
        if not isinstance(o, Cons):
            return out, o
        out.append(o.head)
        o = o.tail
    return out, None


def same_final(a: Outcome, b: Outcome) -> bool:
    if isinstance(a, Raise) and isinstance(b, Raise):
        return rational_equal(a.payload, b.payload)
    return a is b


def prefix_le(o1: Outcome, o2: Outcome, bound: int,
              same: Callable[[Setting, Setting], bool] = equivalent) -> bool:
    """``o1`` approximates ``o2`` within the first ``bound`` elements.

    Holds when the two agree on their first ``bound`` solutions (and on the
    final marker, if it comes within them), or ``o1`` runs out of fuel after
    a prefix it shares with ``o2``.
    """
    for _ in range(bound + 1):
        a = force(o1)
        if a is EXHAUSTED:
            return True
        b = force(o2)
        if isinstance(a, Cons):
            if not isinstance(b, Cons) or not same(a.head, b.head):
                return False
            o1, o2 = a.tail, b.tail
            continue
        return same_final(a, b)
    return True
