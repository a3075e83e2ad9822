"""Constructive universality: place any n-node tournament inside an ILMT iterate.

A 0-step that swaps a node set C for its clones reverses exactly the arcs
inside C and keeps every other arc among the chosen representatives. At the
i-th 0-step we take the next target node u and let C be u together with every
representative whose arc to u points the wrong way; all of those are still
unprocessed, so arcs fixed earlier are never touched again. After n 0-steps
every arc matches. 1-steps keep parent indices, so the map rides along.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .generate import as_sequence, iterate
from .tournament import GraphError, IlmtError, Tournament, nonisomorphic_tournaments


@dataclass(frozen=True)
class EmbedStep:
    t: int  # step index in the generating sequence
    node: int  # target node fixed at this 0-step
    flipped: tuple[int, ...]  # target nodes whose arc to `node` was wrong (the set A)
    image: tuple[int, ...]  # representatives after the step


@dataclass
class EmbeddingMap:
    target: Tournament
    host: Tournament
    image: tuple[int, ...]  # image[h] = host node representing target node h
    r: int
    zeros_used: int
    trace: list[EmbedStep] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "target_n": self.target.n,
            "host_n": self.host.n,
            "r": self.r,
            "zeros_used": self.zeros_used,
            "image": list(self.image),
            "trace": [
                {"t": st.t, "node": st.node, "flipped": list(st.flipped), "image": list(st.image)}
                for st in self.trace
            ],
            "verified": verify_embedding(self),
        }


def embed(g0: Tournament, s, h: Tournament, cap: int | None = None) -> EmbeddingMap:
    """Embed ``h`` into ILMT_{r,s}(g0), r = position of the |V(h)|-th zero of s."""
    s = as_sequence(s)
    n = h.n
    if n > g0.n:
        raise GraphError(f"target has {n} nodes but the base only {g0.n}")
    r = s.zero_index(n)
    if r is None:
        raise GraphError(f"sequence {s} has fewer than {n} zeros")
    image = list(range(n))
    hout = h.out_masks
    pending = list(range(n))
    trace: list[EmbedStep] = []
    host = g0
    zeros = 0
    for t, g, cm in iterate(g0, s, r, cap=cap):
        if cm is not None and cm.bit == 0:
            zeros += 1
            u = pending.pop(0)
            prev_out = prev.out_masks
            wrong = []
            for x in range(n):
                if x == u:
                    continue
                want = (hout[u] >> x) & 1
                have = (prev_out[image[u]] >> image[x]) & 1
                if want != have:
                    if x not in pending:
                        raise IlmtError(f"arc {u}-{x} broken after {x} was fixed")
                    wrong.append(x)
            if wrong:
                for x in (u, *wrong):
                    image[x] = cm.clone_of(image[x])
                trace.append(EmbedStep(t, u, tuple(wrong), tuple(image)))
        prev = host = g
    emb = EmbeddingMap(h, host, tuple(image), r, zeros, trace)
    if not verify_embedding(emb):
        raise IlmtError("embedding failed verification")
    return emb


def verify_embedding(e: EmbeddingMap) -> bool:
    """Injective, and every target arc (x, y) maps to a host arc."""
    img = e.image
    if len(img) != e.target.n or len(set(img)) != len(img):
        return False
    if any(not 0 <= v < e.host.n for v in img):
        return False
    return all(e.host.has_arc(img[x], img[y]) for x, y in e.target.arcs())


def universality_sweep(g0: Tournament, n: int, s=None) -> list[dict]:
    """Embed one representative of every n-node isomorphism class and verify it."""
    if n > 4:
        raise ValueError("sweep supports n <= 4")
    if n > g0.n:
        raise GraphError(f"motif order {n} exceeds base order {g0.n}")
    s = as_sequence("0" * n if s is None else s)
    rows = []
    for h in nonisomorphic_tournaments(n):
        e = embed(g0, s, h)
        rows.append(
            {
                "target_scores": sorted(int(d) for d in h.out_degrees()),
                "r": e.r,
                "host_n": e.host.n,
                "zeros_used": e.zeros_used,
                "image": list(e.image),
                "verified": verify_embedding(e),
            }
        )
    return rows
