"""Clique-immersion certificates, the exact verifier, and exact search.

A K_t-immersion certificate is an injective terminal list (the images
of K_t's vertices) plus one vertex-simple path per terminal pair, the
whole family pairwise edge-disjoint.  Two optional clauses refine the
notion: *odd* requires every path length odd, *strong* forbids every
terminal from appearing as an interior vertex of any path.  Paths may
share vertices freely otherwise; only edges must be disjoint.

The searches are exact, not heuristic: `find_clique_immersion` returns
a certificate iff one exists.  Terminal sets are enumerated in colex
order over degree-feasible vertices, pairs are solved in lex order, and
each pair's paths are enumerated by iterative deepening on length
(odd lengths only under the odd flag).  Pruning is limited to sound
necessary conditions: terminal degree >= t-1, the global edge budget
C(t,2) <= |E|, per-pair parity-aware reachability, and a running
free-edge budget against the cheapest completion of unsolved pairs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

from .errors import (
    DegenerateInputError,
    MalformedCertificateError,
    NoImmersionError,
)
from .graphs import Graph, bits, induced_subgraph, mask_of, max_clique


@dataclass(frozen=True)
class ImmersionFlags:
    strong: bool = False
    odd: bool = False

    def label(self) -> str:
        parts = [name for name in ("strong", "odd") if getattr(self, name)]
        return "+".join(parts) if parts else "plain"


PLAIN = ImmersionFlags()
STRONG = ImmersionFlags(strong=True)
ODD = ImmersionFlags(odd=True)
STRONG_ODD = ImmersionFlags(strong=True, odd=True)

Path = tuple[int, ...]


@dataclass(frozen=True)
class ImmersionCertificate:
    """Terminals plus one path per terminal-index pair (i, j), i < j.

    paths maps the index pair to the path, which runs from
    terminals[i] to terminals[j].  A t=1 certificate has an empty map.
    """

    terminals: tuple[int, ...]
    paths: dict[tuple[int, int], Path] = field(default_factory=dict)

    @property
    def t(self) -> int:
        return len(self.terminals)

    def path_edges(self):
        """Yield (pair, edge) for every edge of every path, normalized u < v."""
        for pair, path in self.paths.items():
            for a, b in zip(path, path[1:]):
                yield pair, (a, b) if a < b else (b, a)


def clique_certificate(vertices) -> ImmersionCertificate:
    """Single-edge certificate on a clique (callers guarantee cliqueness)."""
    terminals = tuple(sorted(vertices))
    paths = {
        (i, j): (terminals[i], terminals[j])
        for i, j in combinations(range(len(terminals)), 2)
    }
    return ImmersionCertificate(terminals, paths)


@dataclass(frozen=True)
class VerifyReport:
    accepted: bool
    violations: tuple[str, ...]


def verify_certificate(g: Graph, cert: ImmersionCertificate, flags: ImmersionFlags) -> VerifyReport:
    """Check every immersion clause; malformed certificates raise instead."""
    t = cert.t
    if t < 1:
        raise MalformedCertificateError("certificate needs at least one terminal")
    for term in cert.terminals:
        if not 0 <= term < g.n:
            raise MalformedCertificateError(f"terminal {term} outside 0..{g.n - 1}")
    expected = set(combinations(range(t), 2))
    got = set(cert.paths)
    if got != expected:
        missing = sorted(expected - got)
        extra = sorted(got - expected)
        detail = []
        if missing:
            detail.append(f"missing pair keys {missing}")
        if extra:
            detail.append(f"unexpected pair keys {extra}")
        raise MalformedCertificateError("; ".join(detail))
    for pair, path in cert.paths.items():
        if len(path) < 2:
            raise MalformedCertificateError(f"path for pair {pair} has fewer than 2 vertices")
        for v in path:
            if not 0 <= v < g.n:
                raise MalformedCertificateError(f"path vertex {v} outside 0..{g.n - 1}")

    violations: list[str] = []
    if len(set(cert.terminals)) != t:
        violations.append("terminals are not pairwise distinct")
    terminal_mask = mask_of(cert.terminals)
    seen_edges: dict[tuple[int, int], tuple[int, int]] = {}
    for (i, j), path in sorted(cert.paths.items()):
        want = (cert.terminals[i], cert.terminals[j])
        if (path[0], path[-1]) != want:
            violations.append(f"path for pair ({i},{j}) does not run from {want[0]} to {want[1]}")
            continue
        if len(set(path)) != len(path):
            violations.append(f"path for pair ({i},{j}) repeats a vertex")
            continue
        ok = True
        for a, b in zip(path, path[1:]):
            if not g.has_edge(a, b):
                violations.append(f"path for pair ({i},{j}) uses the non-edge {a}-{b}")
                ok = False
                break
        if not ok:
            continue
        for a, b in zip(path, path[1:]):
            edge = (a, b) if a < b else (b, a)
            if edge in seen_edges:
                first = seen_edges[edge]
                violations.append(
                    f"edge {edge[0]}-{edge[1]} reused by pairs "
                    f"({first[0]},{first[1]}) and ({i},{j})"
                )
            else:
                seen_edges[edge] = (i, j)
        if flags.odd and (len(path) - 1) % 2 == 0:
            violations.append(f"path for pair ({i},{j}) has even length {len(path) - 1}")
        if flags.strong:
            interior = mask_of(path[1:-1])
            blocked = interior & terminal_mask
            if blocked:
                culprit = next(bits(blocked))
                violations.append(f"terminal {culprit} is interior to the path for pair ({i},{j})")
    return VerifyReport(not violations, tuple(violations))


def certificate_to_json(cert: ImmersionCertificate, flags: ImmersionFlags) -> str:
    payload = {
        "t": cert.t,
        "terminals": list(cert.terminals),
        "paths": {f"{i},{j}": list(path) for (i, j), path in sorted(cert.paths.items())},
        "flags": {"strong": flags.strong, "odd": flags.odd},
    }
    return json.dumps(payload, sort_keys=True)


def certificate_from_json(text: str) -> tuple[ImmersionCertificate, ImmersionFlags]:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedCertificateError(f"certificate is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise MalformedCertificateError("certificate JSON must be an object")
    try:
        t = payload["t"]
        terminals = payload["terminals"]
        raw_paths = payload["paths"]
        flags_obj = payload["flags"]
    except KeyError as exc:
        raise MalformedCertificateError(f"certificate JSON missing key {exc}") from exc
    if not isinstance(terminals, list) or not all(isinstance(v, int) for v in terminals):
        raise MalformedCertificateError("terminals must be a list of integers")
    if t != len(terminals):
        raise MalformedCertificateError(f"t={t} but {len(terminals)} terminals listed")
    if not isinstance(raw_paths, dict):
        raise MalformedCertificateError("paths must be an object keyed by 'i,j'")
    paths: dict[tuple[int, int], Path] = {}
    for key, seq in raw_paths.items():
        try:
            i, j = (int(part) for part in key.split(","))
        except ValueError as exc:
            raise MalformedCertificateError(f"bad pair key {key!r}") from exc
        if not 0 <= i < j < t:
            raise MalformedCertificateError(f"pair key {key!r} out of range for t={t}")
        if not isinstance(seq, list) or not all(isinstance(v, int) for v in seq):
            raise MalformedCertificateError(f"path for pair {key!r} must be a list of integers")
        paths[(i, j)] = tuple(seq)
    if not isinstance(flags_obj, dict):
        raise MalformedCertificateError("flags must be an object")
    flags = ImmersionFlags(strong=bool(flags_obj.get("strong")), odd=bool(flags_obj.get("odd")))
    return ImmersionCertificate(tuple(terminals), paths), flags


def _colex_combinations(items: list[int], k: int):
    """Yield k-subsets of items (ascending tuples) in colexicographic order."""
    if k == 0:
        yield ()
        return
    for i in range(k - 1, len(items)):
        for rest in _colex_combinations(items[:i], k - 1):
            yield rest + (items[i],)


def _pair_floor(g: Graph, a: int, b: int, allowed: int, odd: bool) -> int | None:
    """Shortest possible a-b path length with interiors inside allowed.

    Under the odd flag this is the shortest odd *walk* length, a sound
    lower bound for the shortest odd path (every path is a walk); None
    means no path of the right parity can exist at all.
    """
    adj = g.adj
    if not odd:
        if adj[a] >> b & 1:
            return 1
        dist = 1
        frontier = adj[a] & (allowed | 1 << b)
        seen = frontier | 1 << a
        while frontier:
            if frontier >> b & 1:
                return dist
            dist += 1
            grown = 0
            for v in bits(frontier):
                grown |= adj[v]
            frontier = grown & (allowed | 1 << b) & ~seen
            seen |= frontier
        return None
    # Parity BFS over (vertex, parity) states.
    even_seen, odd_seen = 1 << a, 0
    even_front, odd_front = 1 << a, 0
    dist = 0
    scope = allowed | 1 << a | 1 << b
    while even_front or odd_front:
        dist += 1
        grown = 0
        for v in bits(even_front):
            grown |= adj[v]
        new_odd = grown & scope & ~odd_seen
        grown = 0
        for v in bits(odd_front):
            grown |= adj[v]
        new_even = grown & scope & ~even_seen
        if dist % 2 == 1 and new_odd >> b & 1:
            return dist
        odd_seen |= new_odd
        even_seen |= new_even
        even_front, odd_front = new_even, new_odd
    return None


def find_clique_immersion(g: Graph, t: int, flags: ImmersionFlags) -> ImmersionCertificate | None:
    """Exact search for a K_t-immersion certificate under flags."""
    if t < 1:
        raise ValueError("clique order must be at least 1")
    if t > g.n:
        return None
    if t == 1:
        return ImmersionCertificate((0,), {})
    m = g.edge_count
    pair_count = t * (t - 1) // 2
    if pair_count > m:
        return None
    candidates = [v for v in range(g.n) if g.degree(v) >= t - 1]
    if len(candidates) < t:
        return None

    adj = g.adj
    nbrs = [tuple(bits(adj[v])) for v in range(g.n)]
    edge_index: dict[int, int] = {}
    for k, (u, v) in enumerate(g.edges()):
        edge_index[u << 6 | v] = k
        edge_index[v << 6 | u] = k

    full = g.vertex_mask
    max_len = g.n - 1

    for terms in _colex_combinations(candidates, t):
        term_mask = mask_of(terms)
        pairs = list(combinations(range(t), 2))
        floors: list[int] = []
        feasible = True
        for i, j in pairs:
            a, b = terms[i], terms[j]
            if flags.strong:
                allowed = full & ~term_mask
            else:
                allowed = full & ~(1 << a) & ~(1 << b)
            floor = _pair_floor(g, a, b, allowed, flags.odd)
            if floor is None:
                feasible = False
                break
            floors.append(floor)
        if not feasible:
            continue
        suffix = [0] * (len(pairs) + 1)
        for k in range(len(pairs) - 1, -1, -1):
            suffix[k] = suffix[k + 1] + floors[k]
        if suffix[0] > m:
            continue

        solution: list[Path] = []

        def exact_paths(a: int, b: int, length: int, used: int, banned: int):
            path = [a]
            on_path = 1 << a

            def walk(v: int, remaining: int):
                nonlocal on_path
                if remaining == 1:
                    if adj[v] >> b & 1 and not used >> edge_index[v << 6 | b] & 1:
                        yield tuple(path) + (b,)
                    return
                for w in nbrs[v]:
                    if w == b or on_path >> w & 1 or banned >> w & 1:
                        continue
                    if used >> edge_index[v << 6 | w] & 1:
                        continue
                    path.append(w)
                    on_path |= 1 << w
                    yield from walk(w, remaining - 1)
                    path.pop()
                    on_path &= ~(1 << w)

            yield from walk(a, length)

        def solve(k: int, used: int, free: int) -> bool:
            if k == len(pairs):
                return True
            i, j = pairs[k]
            a, b = terms[i], terms[j]
            banned = term_mask & ~(1 << a) & ~(1 << b) if flags.strong else 0
            cap = min(free - suffix[k + 1], max_len)
            step = 2 if flags.odd else 1
            for length in range(floors[k], cap + 1, step):
                for path in exact_paths(a, b, length, used, banned):
                    edge_bits = 0
                    for x, y in zip(path, path[1:]):
                        edge_bits |= 1 << edge_index[x << 6 | y]
                    solution.append(path)
                    if solve(k + 1, used | edge_bits, free - length):
                        return True
                    solution.pop()
            return False

        if solve(0, 0, m):
            paths = {pair: solution[k] for k, pair in enumerate(pairs)}
            return ImmersionCertificate(tuple(terms), paths)
    return None


def max_clique_immersion(g: Graph, flags: ImmersionFlags) -> tuple[int, ImmersionCertificate]:
    """Largest t admitting a certificate under flags, with a witness."""
    if g.n == 0:
        raise DegenerateInputError("maximum immersion order undefined on the empty graph")
    omega, _ = max_clique(g)
    best = find_clique_immersion(g, omega, flags)
    assert best is not None, "a clique always immerses itself"
    t = omega
    while t < g.n:
        nxt = find_clique_immersion(g, t + 1, flags)
        if nxt is None:
            break
        best = nxt
        t += 1
    return t, best


def minimize_support(g: Graph, t: int, flags: ImmersionFlags) -> int:
    """Inclusion-minimal vertex bitset whose induced subgraph keeps the immersion.

    Greedy single-vertex removals, attempted in decreasing vertex order
    so low-indexed vertices survive, restarting after every success;
    the result is inclusion-wise minimal, not minimum.
    """
    if find_clique_immersion(g, t, flags) is None:
        raise NoImmersionError(f"no K_{t} immersion under {flags.label()} flags")
    support = g.vertex_mask
    improved = True
    while improved:
        improved = False
        for v in sorted(bits(support), reverse=True):
            trial = support & ~(1 << v)
            if trial.bit_count() < t:
                continue
            sub, _ = induced_subgraph(g, trial)
            if find_clique_immersion(sub, t, flags) is not None:
                support = trial
                improved = True
                break
    return support
