"""Instance generation, brute-force oracles, and counterexample search.

Everything here is seeded and deterministic: the same spec and seed always
produce the same instance, and the oracles are written independently of the
recovery pipeline so the two can act as checks on each other.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass

from .classd import check_class_d, class_d_ok
from .equivalence import check_equivalence
from .errors import GenerationBudgetExceeded
from .fields import PrimeField
from .kernels import Gauge, Kernel, require_same_points

_ENUMERATION_GUARD = 10**7
_SPAN = 9  # rational entries and gauges are integers in [-_SPAN, _SPAN]


@dataclass(frozen=True)
class InstanceSpec:
    field: object
    n: int
    transpose: bool = False
    zero_edges: int = 0
    seed: int = 0
    max_attempts: int = 100000


@dataclass(frozen=True)
class GroundTruth:
    gauge: Gauge
    transposed: bool


def _random_value(rng, field):
    if field.kind == "prime":
        return rng.randrange(field.p)
    return rng.randint(-_SPAN, _SPAN)


def _random_unit(rng, field):
    if field.kind == "prime":
        return rng.randrange(1, field.p)
    v = rng.randint(1, 2 * _SPAN)
    return v - _SPAN - 1 if v <= _SPAN else v - _SPAN  # uniform on nonzero


def _place_zeros(rng, rows, n, count):
    # each requested zero edge takes a fresh pair of points; a coin decides
    # whether both directions vanish or only one
    chosen = rng.sample(range(n), 2 * count)
    for t in range(count):
        u, v = chosen[2 * t], chosen[2 * t + 1]
        rows[u][v] = 0
        if rng.random() < 0.5:
            rows[v][u] = 0


def gen_instance(spec):
    """Draw a nondegenerate kernel and a transformed copy with known truth.

    Rejection sampling: off-diagonal entries are uniform nonzero (diagonals
    unrestricted), the requested zero edges are imposed, and the draw is
    repeated until the cross-minor scan accepts.  The companion kernel is
    the conjugate of k (or of its transpose) by a random unit gauge, so the
    pair is equivalent by construction and the returned GroundTruth is the
    exact transform.  Raises GenerationBudgetExceeded when max_attempts
    rejections pass without an accept, which signals a field too small to
    be nondegenerate at this n.
    """
    f = spec.field
    n = spec.n
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if spec.zero_edges < 0 or 2 * spec.zero_edges > n:
        raise ValueError(f"cannot place {spec.zero_edges} zero edges on {n} points")
    rng = random.Random(spec.seed)
    rows = None
    for _ in range(spec.max_attempts):
        candidate = [[_random_value(rng, f) if i == j else _random_unit(rng, f)
                      for j in range(n)] for i in range(n)]
        if spec.zero_edges:
            _place_zeros(rng, candidate, n, spec.zero_edges)
        if class_d_ok(f, candidate):
            rows = candidate
            break
    if rows is None:
        raise GenerationBudgetExceeded(
            f"no nondegenerate kernel over {f!r} with n={n} found in "
            f"{spec.max_attempts} attempts", attempts=spec.max_attempts)
    labels = [str(i + 1) for i in range(n)]
    k = Kernel(f, labels, rows)
    gauge = Gauge(f, labels, [_random_unit(rng, f) for _ in range(n)])
    source = k.transpose() if spec.transpose else k
    q = source.conjugate(gauge)
    return k, q, GroundTruth(gauge=gauge, transposed=spec.transpose)


def perturb(k, q, seed):
    """Copy q with exactly one entry changed so a minor of order <= 3 moves.

    Draws an entry and a fresh value until some principal minor of order at
    most three provably changes, which guarantees the result is not
    equivalent to anything q was equivalent to, with a witness of size <= 3.
    """
    require_same_points(k, q)
    f = k.field
    n = k.n
    rng = random.Random(seed)
    for _ in range(10000):
        i = rng.randrange(n)
        j = rng.randrange(n)
        value = f.coerce(_random_value(rng, f))
        if value == q.rows[i][j]:
            continue
        rows = [list(row) for row in q.rows]
        rows[i][j] = value
        candidate = Kernel(f, k.labels, rows)
        if i == j:
            return candidate  # an order-1 minor moved
        if _low_order_minor_moved(q, candidate, i, j):
            return candidate
    raise RuntimeError("could not find a perturbation; this should not happen")


def _low_order_minor_moved(q, candidate, i, j):
    if candidate.principal_minor((i, j)) != q.principal_minor((i, j)):
        return True
    for m in range(q.n):
        if m == i or m == j:
            continue
        subset = tuple(sorted((i, j, m)))
        if candidate.principal_minor(subset) != q.principal_minor(subset):
            return True
    return False


@dataclass(frozen=True)
class OracleResult:
    found: bool
    complete: bool
    transposed: bool = None
    gauge: Gauge = None


def brute_force_diagonal_similar(k, q):
    """Ground-truth search for a diagonal transform, independent of recovery.

    Over GF(p): exhaustive enumeration of all gauges with g = 1 at the first
    point (a global scale never matters), for both flips; complete whenever
    the guarded work bound n * (p-1)^(n-1) <= 1e7 allows it at all.  Over
    the rationals: gauge propagation along nonzero entries plus a full
    re-check; complete when the nonzero pattern is connected, otherwise a
    miss is reported with complete=False rather than guessed.
    """
    require_same_points(k, q)
    if isinstance(k.field, PrimeField):
        return _enumerate_prime(k, q)
    return _propagate_rational(k, q)


def _enumerate_prime(k, q):
    f = k.field
    p = f.p
    n = k.n
    work = n * (p - 1) ** (n - 1)
    if work > _ENUMERATION_GUARD:
        raise ValueError(
            f"enumeration needs ~{work} checks, over the {_ENUMERATION_GUARD} guard")
    targets = [(False, k.rows), (True, k.transpose().rows)]
    for tail in itertools.product(range(1, p), repeat=n - 1):
        g = (1,) + tail
        inv = [pow(v, p - 2, p) for v in g]
        for transposed, t_rows in targets:
            ok = True
            for i in range(n):
                gi = g[i]
                ti = t_rows[i]
                qi = q.rows[i]
                for j in range(n):
                    if gi * ti[j] * inv[j] % p != qi[j]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return OracleResult(True, True, transposed,
                                    Gauge(f, k.labels, list(g)))
    return OracleResult(False, True)


def _propagate_rational(k, q):
    all_definite = True
    for transposed in (False, True):
        t = k.transpose() if transposed else k
        values, definite = _push_gauge(k.field, t.rows, q.rows)
        if values is not None:
            return OracleResult(True, True, transposed,
                                Gauge(k.field, k.labels, values))
        all_definite = all_definite and definite
    # the miss is a definite verdict only if it was definite for both flips
    return OracleResult(False, all_definite)


def _push_gauge(field, t_rows, q_rows):
    """Independent re-implementation of gauge propagation for the oracle.

    Returns (values, definite); values is None on a miss, and the miss is
    flagged indefinite when the nonzero pattern was disconnected (the
    conservative stance: propagation roots beyond the first are pinned
    to 1, and no claim is made that no other choice could have worked).
    """
    n = len(t_rows)
    zero = field.is_zero
    for i in range(n):
        for j in range(n):
            if zero(t_rows[i][j]) != zero(q_rows[i][j]):
                return None, True  # definite: no gauge can fix a zero mismatch
    g = [None] * n
    roots = 0
    for root in range(n):
        if g[root] is not None:
            continue
        roots += 1
        g[root] = field.one
        queue = [root]
        while queue:
            i = queue.pop()
            for j in range(n):
                if g[j] is not None or i == j:
                    continue
                if not zero(t_rows[i][j]):
                    g[j] = field.div(field.mul(g[i], t_rows[i][j]), q_rows[i][j])
                elif not zero(t_rows[j][i]):
                    g[j] = field.div(field.mul(q_rows[j][i], g[i]), t_rows[j][i])
                else:
                    continue
                queue.append(j)
    connected = roots == 1
    for i in range(n):
        for j in range(n):
            if q_rows[i][j] != field.div(field.mul(g[i], t_rows[i][j]), g[j]):
                return None, connected
    return g, connected


def search_counterexample(field, n, budget, seed):
    """Hunt for equivalent pairs that no diagonal transform (flipped or not)
    explains.

    Samples `budget` kernel pairs over a small prime field, screens them
    with the order-1/order-2 consequences before paying for anything
    heavier, and puts every survivor through the full minor comparison and
    the exhaustive oracle.  Emitted pairs are re-verified and must be
    degenerate (fail the cross-minor scan) on at least one side; an
    equivalent nondegenerate pair with no transform would contradict the
    rigidity theorem, so it raises instead of being returned.  Results are
    sorted by their serialized form; an empty list is a normal outcome.
    """
    if not isinstance(field, PrimeField):
        raise ValueError("counterexample search runs over prime fields")
    if n < 1 or budget < 0:
        raise ValueError("need n >= 1 and budget >= 0")
    p = field.p
    rng = random.Random(seed)
    space = p ** (n * n)
    powers = [p**t for t in range(n * n)]
    diag_slots = [powers[i * n + i] for i in range(n)]
    upper = [(i, j) for i in range(n) for j in range(i + 1, n)]
    labels = [str(i + 1) for i in range(n)]
    hits = []
    for _ in range(budget):
        a = rng.randrange(space)
        b = rng.randrange(space)
        if any((a // s) % p != (b // s) % p for s in diag_slots):
            continue
        arows = [[(a // powers[i * n + j]) % p for j in range(n)] for i in range(n)]
        brows = [[(b // powers[i * n + j]) % p for j in range(n)] for i in range(n)]
        if any((arows[i][j] * arows[j][i] - brows[i][j] * brows[j][i]) % p
               for i, j in upper):
            continue
        k = Kernel(field, labels, arows)
        q = Kernel(field, labels, brows)
        if not check_equivalence(k, q).equivalent:
            continue
        oracle = brute_force_diagonal_similar(k, q)
        if oracle.found:
            continue
        holds_k = check_class_d(k).holds
        holds_q = check_class_d(q).holds
        if holds_k and holds_q:
            raise RuntimeError(
                "equivalent nondegenerate pair with no diagonal transform; "
                "this contradicts the rigidity theorem and signals a bug")
        hits.append({
            "k": k.to_doc(),
            "q": q.to_doc(),
            "verdicts": {
                "equivalent": True,
                "diagonally_similar": False,
                "flipped_similar": False,
                "cross_minors_nonzero_k": holds_k,
                "cross_minors_nonzero_q": holds_q,
            },
        })
    hits.sort(key=lambda h: json.dumps(h, sort_keys=True))
    return hits
