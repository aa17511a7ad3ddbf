"""
Finite-sequence coding.

Two bijections live here:

- the general code ℕ^{<ℕ} ↔ ℕ (λ ↦ 0, s*k ↦ 1 + ⟨encode(s), k⟩ with the
  Cantor pairing ⟨a, b⟩ = (a+b)(a+b+1)/2 + b), used wherever sequences of
  naturals are named by a single number;
- the shortlex index of binary strings (λ, 0, 1, 00, 01, ...), used to
  address nodes of binary trees. The general code grows doubly
  exponentially in the length, so binary trees are indexed by shortlex.
"""
import math
from typing import Iterable, Sequence, Tuple


def cantor_pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def cantor_unpair(n: int) -> Tuple[int, int]:
    w = (math.isqrt(8 * n + 1) - 1) // 2
    b = n - w * (w + 1) // 2
    return w - b, b


def tuple_code(*items: int) -> int:
    """⟨n₀, n₁, ..., n_k⟩ by right-folded pairing; a single item codes itself."""
    if not items:
        raise ValueError("tuple_code needs at least one item")
    code = items[-1]
    for item in reversed(items[:-1]):
        code = cantor_pair(item, code)
    return code


def tuple_decode(n: int, arity: int) -> Tuple[int, ...]:
    if arity < 1:
        raise ValueError("arity must be positive")
    items = []
    for _ in range(arity - 1):
        head, n = cantor_unpair(n)
        items.append(head)
    items.append(n)
    return tuple(items)


class FinSeq(tuple):
    """A finite sequence of naturals; λ is the empty FinSeq."""

    def __new__(cls, items: Iterable[int] = ()):
        return super().__new__(cls, items)

    @property
    def code(self) -> int:
        return encode(self)

    def append(self, k: int) -> "FinSeq":
        return FinSeq(tuple(self) + (k,))

    def concat(self, other: Sequence[int]) -> "FinSeq":
        return FinSeq(tuple(self) + tuple(other))

    def is_prefix_of(self, other: Sequence[int]) -> bool:
        return len(self) <= len(other) and tuple(other[: len(self)]) == tuple(self)

    def __repr__(self) -> str:
        return "⟨" + ",".join(str(i) for i in self) + "⟩"


EMPTY = FinSeq()


def encode(s: Sequence[int]) -> int:
    code = 0
    for k in s:
        if k < 0:
            raise ValueError(f"negative entry {k} in sequence")
        code = 1 + cantor_pair(code, k)
    return code


def decode(n: int) -> FinSeq:
    if n < 0:
        raise ValueError(f"negative code {n}")
    items = []
    while n > 0:
        n, k = cantor_unpair(n - 1)
        items.append(k)
    return FinSeq(reversed(items))


def code_append(code: int, k: int) -> int:
    return 1 + cantor_pair(code, k)


def code_singleton(k: int) -> int:
    return code_append(0, k)


def code_concat(code_s: int, code_t: int) -> int:
    code = code_s
    for k in decode(code_t):
        code = code_append(code, k)
    return code


def code_length(code: int) -> int:
    length = 0
    while code > 0:
        code, _ = cantor_unpair(code - 1)
        length += 1
    return length


def code_item(code: int, i: int) -> int:
    s = decode(code)
    if not 0 <= i < len(s):
        raise IndexError(f"index {i} outside sequence of length {len(s)}")
    return s[i]


# Binary strings in shortlex order

def binary_index(bits: Sequence[int]) -> int:
    value = 0
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"non-binary entry {b}")
        value = (value << 1) | b
    return (1 << len(bits)) - 1 + value


def binary_string(n: int) -> FinSeq:
    if n < 0:
        raise ValueError(f"negative index {n}")
    length = (n + 1).bit_length() - 1
    value = n + 1 - (1 << length)
    return FinSeq((value >> (length - 1 - i)) & 1 for i in range(length))


def binary_strings(length: int) -> Iterable[FinSeq]:
    """All strings of the given length in lexicographic order."""
    for value in range(1 << length):
        yield FinSeq((value >> (length - 1 - i)) & 1 for i in range(length))
