'''Exact counting of cube states and the pigeonhole move-count bound.

Every count here is an exact Python integer; nothing is floated. The
closed forms split by parity: odd cubes carry the single-edge family
and the fixed centres, even cubes do not, and the number of 24-slot
orbit families grows quadratically either way. Divisions in the closed
forms are checked to leave no remainder.

The move-count bound is the pigeonhole argument: with 6n basic quarter
turns, at most (6n)^k states are reachable within k turns, so any k
with (6n)^k below the physical state count is a strict lower bound on
the worst-case solve length. The logarithm quotient is evaluated with
interval arithmetic so the reported ceiling is certified: if the
interval leaves the ceiling ambiguous the computation refuses rather
than guessing. A tuned variant sums the reduced word counts instead of
the raw powers.
'''

from contextlib import contextmanager
from dataclasses import dataclass
from math import factorial

import mpmath
from mpmath import iv


class PrecisionTooLow(ValueError):
    '''The working precision leaves the bound's ceiling ambiguous.'''


@dataclass(frozen=True)
class BoundResult:
    '''A certified move-count lower bound for one cube size.

    bound is the real-valued log quotient at the stated precision (for
    the tuned variant, the integer it lands on); ceiling is the smallest
    integer move count the argument rules out being beaten.
    '''

    n: int
    s_phys: int
    basic_move_count: int
    precision: int
    bound: object
    ceiling: int


def _check(n):
    if not isinstance(n, int) or n < 2:
        raise ValueError('cube size must be an integer of at least 2')


def _large_orbit_count(n):
    '''Number of 24-slot orbit families (wings plus both centre kinds).'''
    if n % 2:
        return (n - 3) * (n + 1) // 4
    return n * (n - 2) // 4


def s_conf_size(n):
    '''Number of reassemblies: states reachable with a screwdriver.'''
    _check(n)
    value = (factorial(8) * 3 ** 8
             * 2 ** (12 * (n - 2))
             * factorial(24) ** _large_orbit_count(n))
    if n % 2:
        value *= factorial(12)
    return value


def group_order(n):
    '''Number of move-reachable sticker states.'''
    _check(n)
    if n % 2:
        q = (n - 3) // 2
        numerator = (factorial(8) * 3 ** 7 * factorial(12) * 2 ** 11
                     * factorial(24) ** _large_orbit_count(n))
        quotient, remainder = divmod(numerator, 2 ** (q * q + q + 1))
    else:
        p = (n - 2) // 2
        numerator = (factorial(8) * 3 ** 7
                     * factorial(24) ** _large_orbit_count(n))
        quotient, remainder = divmod(numerator, 2 ** (p * p))
    assert remainder == 0, 'the group order formula divides exactly'
    return quotient


def orbit_count(n):
    '''Number of reassembly classes the moves cannot mix.'''
    _check(n)
    if n % 2:
        exponent = (n - 3) ** 2 // 4 + (n + 1) // 2 + 12 * (n - 3)
    else:
        exponent = (n - 2) ** 2 // 4 + 12 * (n - 2)
    return 3 * 2 ** exponent


def stabilizer_order(n):
    '''Number of sticker states painting any one physical configuration.

    Stickers of one colour inside a 24-slot centre orbit are mutually
    interchangeable; everything else is pinned down.
    '''
    _check(n)
    if n % 2:
        exponent = (n - 3) * (n - 1) // 4
    else:
        exponent = (n - 2) ** 2 // 4
    return (24 ** 6 // 2) ** exponent


def s_phys_size(n):
    '''Number of physically distinct valid configurations.'''
    _check(n)
    if n % 2:
        numerator = (factorial(8) * 3 ** 7 * factorial(12) * 2 ** 10
                     * factorial(24) ** _large_orbit_count(n))
        exponent = (n - 3) * (n - 1) // 4
    else:
        numerator = (factorial(8) * 3 ** 7
                     * factorial(24) ** _large_orbit_count(n))
        exponent = (n - 2) ** 2 // 4
    quotient, remainder = divmod(numerator, (24 ** 6) ** exponent)
    assert remainder == 0, 'the physical count formula divides exactly'
    return quotient


@contextmanager
def _interval_digits(precision):
    saved = iv.dps
    iv.dps = precision
    try:
        yield
    finally:
        iv.dps = saved


def _ln_s_phys(n):
    '''Interval enclosure of ln of the physical state count, built from
    factor logarithms so no huge integer is ever materialized.'''
    value = iv.log(iv.mpf(factorial(8))) + 7 * iv.log(iv.mpf(3))
    if n % 2:
        value += iv.log(iv.mpf(factorial(12))) + 10 * iv.log(iv.mpf(2))
        down = (n - 3) * (n - 1) // 4
    else:
        down = (n - 2) ** 2 // 4
    value += _large_orbit_count(n) * iv.log(iv.mpf(factorial(24)))
    value -= down * 6 * iv.log(iv.mpf(24))
    return value


def _bound_interval(n):
    return _ln_s_phys(n) / iv.log(iv.mpf(6 * n)) - 1


def gods_number_lower_bound(n, precision=50):
    '''Certified lower bound on the worst-case quarter-turn solve length.

    The bound is log(s_phys_size(n)) / log(6n) - 1, the exponent below
    which 6n basic moves cannot reach every physical state; the quotient
    is base-invariant. precision is in significant decimal digits;
    raises PrecisionTooLow when the interval cannot pin the ceiling.
    '''
    _check(n)
    with _interval_digits(precision):
        bound = _bound_interval(n)
        low = mpmath.mpf(bound.a)
        high = mpmath.mpf(bound.b)
    assert low > 0, 'the bound is positive from the smallest cube up'
    ceil_low = int(mpmath.ceil(low))
    ceil_high = int(mpmath.ceil(high))
    if ceil_low != ceil_high:
        raise PrecisionTooLow(
            'ceiling ambiguous between %d and %d at %d digits'
            % (ceil_low, ceil_high, precision))
    return BoundResult(n=n, s_phys=s_phys_size(n), basic_move_count=6 * n,
                       precision=precision, bound=(low + high) / 2,
                       ceiling=ceil_low)


def reduced_sequence_count(n, k):
    '''Number of reduced words of length k: 6n letters in 2n mutually
    excluding triples, no two consecutive letters from one triple.'''
    _check(n)
    if not isinstance(k, int) or k < 0:
        raise ValueError('word length must be a nonnegative integer')
    if k == 0:
        return 1
    return 6 * n * (6 * n - 3) ** (k - 1)


def tuned_lower_bound(n, precision=50):
    '''Lower bound from reduced words: the smallest k whose cumulative
    reduced word count reaches the physical state count. Never weaker
    than the plain bound, since reduced words are scarcer than raw
    ones.'''
    _check(n)
    target = s_phys_size(n)
    total = 1
    k = 0
    while total < target:
        k += 1
        total += reduced_sequence_count(n, k)
    return BoundResult(n=n, s_phys=target, basic_move_count=6 * n,
                       precision=precision, bound=mpmath.mpf(k), ceiling=k)


def normalized_bound_ratio(n, precision=30):
    '''The bound scaled by log2(n)/n^2, the quantity whose convergence
    exhibits the quadratic-over-log growth of the bound.'''
    _check(n)
    with _interval_digits(precision):
        ratio = (_bound_interval(n) * iv.log(iv.mpf(n))
                 / iv.log(iv.mpf(2)) / (iv.mpf(n) ** 2))
        return float(mpmath.mpf(ratio.mid))


def normalized_bound_limit():
    '''The constant normalized_bound_ratio approaches as n grows.'''
    return float(mpmath.log(factorial(24) / mpmath.mpf(24) ** 6, 2) / 4)
