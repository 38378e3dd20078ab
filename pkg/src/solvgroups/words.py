"""Free-group words over constants ``z1..zr`` and variables ``x1, x2, ...``.

Letters are stored run-length encoded as ``(gen, exp)`` pairs.  ``gen > 0``
is the constant ``z_gen``; ``gen < 0`` is the variable ``x_{-gen}``.  Words
are always freely reduced.

Commutators follow ``(u, v) = u^-1 v^-1 u v`` and longer brackets are left
normed: ``(u, v, w) = ((u, v), w)``.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence


class WordSyntaxError(ValueError):
    """Raised by :func:`parse_word`; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class Letter(NamedTuple):
    gen: int
    exp: int

    @property
    def is_variable(self) -> bool:
        return self.gen < 0

    @property
    def index(self) -> int:
        return abs(self.gen)

    def __str__(self) -> str:
        name = f"x{-self.gen}" if self.gen < 0 else f"z{self.gen}"
        return name if self.exp == 1 else f"{name}^{self.exp}"


def _reduce(letters: Iterable[tuple[int, int]]) -> tuple[Letter, ...]:
    stack: list[list[int]] = []
    for gen, exp in letters:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([gen, exp])
    return tuple(Letter(g, e) for g, e in stack)


class Word:
    """An immutable freely reduced word of a fixed ambient rank."""

    __slots__ = ("letters", "rank", "_hash")

    def __init__(self, letters: Iterable[tuple[int, int]] = (), rank: int = 1):
        if rank < 0:
            raise ValueError("rank must be nonnegative")
        reduced = _reduce(letters)
        for gen, _ in reduced:
            if gen == 0:
                raise ValueError("generator index 0 is not allowed")
            if gen > rank:
                raise ValueError(f"constant z{gen} out of range for rank {rank}")
        self.letters = reduced
        self.rank = rank
        self._hash = None

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls((), rank)

    @classmethod
    def gen(cls, i: int, rank: int, exp: int = 1) -> "Word":
        return cls(((i, exp),), rank)

    @classmethod
    def var(cls, i: int, rank: int, exp: int = 1) -> "Word":
        if i < 1:
            raise ValueError("variable indices start at 1")
        return cls(((-i, exp),), rank)

    @classmethod
    def parse(cls, text: str, rank: int) -> "Word":
        return parse_word(text, rank)

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.rank == other.rank and self.letters == other.letters

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, self.letters))
        return self._hash

    def __len__(self) -> int:
        """Number of unit letters, i.e. the sum of absolute exponents."""
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "*".join(str(letter) for letter in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r}, rank={self.rank})"

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, n: int) -> "Word":
        return power(self, n)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    @property
    def has_variables(self) -> bool:
        return any(g < 0 for g, _ in self.letters)

    def variables(self) -> set[int]:
        return {-g for g, _ in self.letters if g < 0}

    def constants(self) -> set[int]:
        return {g for g, _ in self.letters if g > 0}

    def unit_letters(self) -> Iterator[tuple[int, int]]:
        """Yield ``(gen, +-1)`` one unit letter at a time."""
        for gen, exp in self.letters:
            sign = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                yield gen, sign

    def with_rank(self, rank: int) -> "Word":
        return Word(self.letters, rank)


def _check_rank(*words: Word) -> int:
    ranks = {w.rank for w in words}
    if len(ranks) > 1:
        raise ValueError(f"rank mismatch: {sorted(ranks)}")
    return ranks.pop()


def multiply(*words: Word) -> Word:
    if not words:
        raise ValueError("multiply needs at least one word")
    rank = _check_rank(*words)
    return Word(itertools.chain.from_iterable(w.letters for w in words), rank)


def invert(u: Word) -> Word:
    return Word(((g, -e) for g, e in reversed(u.letters)), u.rank)


def power(u: Word, n: int) -> Word:
    if n < 0:
        u, n = invert(u), -n
    return Word(u.letters * n, u.rank)


def conjugate(u: Word, t: Word) -> Word:
    """``u^t = t^-1 u t``."""
    return multiply(invert(t), u, t)


def commutator(u: Word, v: Word) -> Word:
    """``(u, v) = u^-1 v^-1 u v``."""
    return multiply(invert(u), invert(v), u, v)


def left_normed(*words: Word) -> Word:
    if len(words) < 2:
        raise ValueError("left-normed commutator needs at least two arguments")
    result = words[0]
    for w in words[1:]:
        result = commutator(result, w)
    return result


def engel_z(k: int, l: int, x: Word, y: Word) -> Word:
    """``(y, x; k, y; l-1)``: ``y`` bracketed with ``k`` copies of ``x``, then ``l - 1`` of ``y``."""
    if k < 1 or l < 1:
        raise ValueError("engel_z needs k >= 1 and l >= 1")
    return left_normed(y, *([x] * k), *([y] * (l - 1)))


def build_w(k: int, l: int, m: int, n: int, x: Word, y: Word) -> Word:
    return commutator(engel_z(k, l, x, y), engel_z(m, n, x, y))


def substitute(template: Word, assignment: Mapping[int, Word] | Sequence[Word]) -> Word:
    """Replace every variable ``x_i`` of ``template`` by ``assignment[i]``.

    A sequence assignment is 1-based in the variable index (``assignment[0]``
    is the value of ``x1``).  The result takes the rank of the assigned words;
    constants of the template are kept.
    """
    if not isinstance(assignment, Mapping):
        assignment = {i + 1: w for i, w in enumerate(assignment)}
    used = template.variables()
    missing = used - set(assignment)
    if missing:
        raise KeyError(f"unassigned variables: {', '.join(f'x{i}' for i in sorted(missing))}")
    ranks = {assignment[i].rank for i in used}
    if len(ranks) > 1:
        raise ValueError(f"rank mismatch among assigned words: {sorted(ranks)}")
    rank = ranks.pop() if ranks else template.rank
    letters: list[tuple[int, int]] = []
    for gen, exp in template.letters:
        if gen > 0:
            letters.append((gen, exp))
            continue
        image = assignment[-gen]
        if exp < 0:
            image = invert(image)
        letters.extend(image.letters * abs(exp))
    return Word(letters, rank)


def to_template(word: Word, offset: int = 0) -> Word:
    """Rename every constant ``z_i`` to the variable ``x_{i+offset}``."""
    if word.has_variables:
        raise ValueError("word already contains variables")
    return Word(((-(g + offset), e) for g, e in word.letters), word.rank)


def derived_law_word(s: int, rank: int = 0) -> Word:
    """The solvability law of class ``s`` over ``2**s`` variables."""
    if s < 1:
        raise ValueError("s must be positive")

    def build(level: int, first: int) -> Word:
        if level == 1:
            return commutator(Word.var(first, rank), Word.var(first + 1, rank))
        half = 2 ** (level - 1)
        return commutator(build(level - 1, first), build(level - 1, first + half))

    return build(s, 1)


def basic_commutators(rank: int, weight: int) -> list[Word]:
    """Left-normed ``(z_a, z_b, z_c3, ..., z_cw)`` with ``a > b <= c3 <= ... <= cw``.

    These are the basic commutators that survive in a free metabelian group;
    they form a basis of the ``weight``-th lower central factor for weights
    at least 2.
    """
    if weight < 2:
        raise ValueError("basic commutators have weight >= 2")
    gens = [Word.gen(i, rank) for i in range(1, rank + 1)]
    out = []
    for a in range(2, rank + 1):
        for b in range(1, a):
            for tail in itertools.combinations_with_replacement(range(b, rank + 1), weight - 2):
                out.append(left_normed(gens[a - 1], gens[b - 1], *(gens[c - 1] for c in tail)))
    return out


# -- parsing -------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, rank: int):
        self.text = text
        self.rank = rank
        self.pos = 0

    def error(self, message: str, pos: int | None = None):
        raise WordSyntaxError(message, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            self.error(f"expected {ch!r}, found {found}")
        self.pos += 1

    def integer(self, signed: bool) -> int:
        self.skip()
        start = self.pos
        if signed and self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.error("expected an integer", start)
        return int(self.text[start:self.pos])

    def parse(self) -> Word:
        word = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return word

    def expr(self) -> Word:
        result = self.factor()
        while self.peek() == "*":
            self.pos += 1
            result = multiply(result, self.factor())
        return result

    def factor(self) -> Word:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            base = power(base, self.integer(signed=True))
        return base

    def atom(self) -> Word:
        ch = self.peek()
        start = self.pos
        if ch in ("z", "x"):
            self.pos += 1
            index = self.integer(signed=False)
            if index < 1:
                self.error("generator indices start at 1", start)
            if ch == "z":
                if index > self.rank:
                    self.error(f"z{index} out of range for rank {self.rank}", start)
                return Word.gen(index, self.rank)
            return Word.var(index, self.rank)
        if ch == "1":
            self.pos += 1
            return Word.identity(self.rank)
        if ch == "(":
            self.pos += 1
            parts = [self.expr()]
            while self.peek() == ",":
                self.pos += 1
                parts.append(self.expr())
            self.expect(")")
            return parts[0] if len(parts) == 1 else left_normed(*parts)
        self.error(f"unexpected {ch!r}" if ch else "unexpected end of input")


def parse_word(text: str, rank: int) -> Word:
    """Parse the word language: ``z3``, ``x1``, ``u*v``, ``u^-2``, ``(u,v,w)``, ``1``."""
    return _Parser(text, rank).parse()
