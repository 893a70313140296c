import time
from fractions import Fraction
from functools import reduce, wraps
from math import gcd
from typing import Iterable, List, Sequence, Tuple, TypeVar

T = TypeVar("T")


# Decorators
def timed(log):
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                log.debug(
                    f"{func.__name__} took "
                    f"{ms(time.perf_counter() - start)}ms"
                )

        return wrapper

    return decorator


# Functions
def ms(seconds: float) -> float:
    return round(seconds * 1000, 2)


def lcm(*values: int) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), values, 1)


def gcd_all(values: Iterable[int]) -> int:
    return reduce(gcd, values, 0)


def frac_gcd(values: Iterable[Fraction]) -> Fraction:
    """Largest rational g with every value an integer multiple of g."""
    values = [abs(Fraction(v)) for v in values if v != 0]
    if not values:
        return Fraction(0)
    den = lcm(*(v.denominator for v in values))
    num = gcd_all(int(v * den) for v in values)
    return Fraction(num, den)


def fmt_fraction(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def primitive_root(word: Sequence[T]) -> Tuple[T, ...]:
    word = tuple(word)
    n = len(word)
    if n == 0:
        return word
    doubled = word + word
    for i in range(1, n + 1):
        if doubled[i : i + n] == word:
            return word[:i]
    return word


def rotate(word: Sequence[T], k: int) -> Tuple[T, ...]:
    word = tuple(word)
    if not word:
        return word
    k %= len(word)
    return word[k:] + word[:k]


def is_rotation(a: Sequence[T], b: Sequence[T]) -> bool:
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        return False
    if not a:
        return True
    doubled = a + a
    return any(doubled[i : i + len(b)] == b for i in range(len(a)))


def chunks(items: List[T], n: int) -> List[List[T]]:
    n = max(1, n)
    size = -(-len(items) // n) if items else 0
    if size == 0:
        return [[]]
    return [items[i : i + size] for i in range(0, len(items), size)]


def render_text(value, indent: int = 0) -> str:
    """A JSON-like report as indented `key: value` lines."""
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {item}")
        return "\n".join(lines)
    if isinstance(value, list):
        if all(not isinstance(i, (dict, list)) for i in value):
            return pad + ", ".join(str(i) for i in value)
        return "\n".join(
            f"{pad}-\n{render_text(i, indent + 1)}" for i in value
        )
    return f"{pad}{value}"
