"""Finite-state machines computing expansion weights from plain binary input.

The weight transducers read the joint binary expansion of a vector least
significant column first (one input symbol = one 0/1 column) and emit one
output bit per step; the number of 1-outputs is the weight of the optimal
expansion.  States are either "looping" states (one per carry vector s) or
"block" states (s,t)_i^C that drive d parallel copies of a three-integer
comparison automaton for w-1 steps, where t tracks the non-uniqueness of
the pending digit and C the coordinates still eligible for the deferred
digit bump.  Reading 4w zeros from anywhere returns to the initial state.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .digitset import DigitSet
from .errors import BudgetExceeded

Label = tuple


def comparison_step(s: int, t: int, alpha: int, beta: int, gamma: int) -> tuple[int, int]:
    """One step of the comparison automaton on digit triple (alpha,beta,gamma).

    s carries the pending carry of the addition a+b, t the truth value of
    (a+b) mod 2^i > c mod 2^i after i digits.
    """
    total = alpha + beta + s
    return total // 2, 1 if total % 2 > gamma - t else 0


@dataclass(frozen=True)
class Automaton:
    """The four-state acceptor for 'a + b <= c' on equal-length binary words."""

    initial: tuple[int, int] = (0, 0)

    @property
    def states(self) -> list[tuple[int, int]]:
        return [(s, t) for s in (0, 1) for t in (0, 1)]

    def step(self, state, symbol):
        return comparison_step(state[0], state[1], *symbol)

    def accepts_word(self, word) -> bool:
        state = self.initial
        for symbol in word:
            state = self.step(state, symbol)
        return state == (0, 0)

    def accepts(self, a: int, b: int, c: int, length: int | None = None) -> bool:
        if min(a, b, c) < 0:
            raise ValueError("inputs must be non-negative")
        if length is None:
            length = max(a, b, c).bit_length() + 2
        if max(a, b, c) >> length:
            raise ValueError(f"length {length} too short")
        word = [((a >> i) & 1, (b >> i) & 1, (c >> i) & 1) for i in range(length)]
        return self.accepts_word(word)


def comparison_automaton() -> Automaton:
    return Automaton()


@dataclass(frozen=True)
class Transducer:
    """Deterministic, input-complete weight transducer.

    `states` are labels ('loop', s) or ('block', s, t, i, C) with s, t, C
    coordinate bitmasks (bit j-1 = coordinate j); `nxt[state][symbol]` and
    `out[state][symbol]` give target index and output bit; the initial state
    (which is also final) is last in the state order.
    """

    d: int
    w: int
    states: tuple[Label, ...]
    initial: int
    nxt: tuple[tuple[int, ...], ...]
    out: tuple[tuple[int, ...], ...]
    ds: Optional[DigitSet] = None

    @property
    def n_states(self) -> int:
        return len(self.states)

    @property
    def n_symbols(self) -> int:
        return 1 << self.d

    @property
    def reset_len(self) -> int:
        return 4 * self.w


def _bitstr(mask: int, d: int) -> str:
    return "".join(str((mask >> j) & 1) for j in range(d))


def state_name(label: Label, d: int) -> str:
    if label[0] == "opaque":
        return label[1]
    if label[0] == "loop":
        return f"s={_bitstr(label[1], d)}"
    _, s, t, i, c = label
    name = f"({_bitstr(s, d)},{_bitstr(t, d)})_{i}"
    if c:
        coords = ",".join(str(j + 1) for j in range(d) if (c >> j) & 1)
        name += "^{%s}" % coords
    return name


def _state_order(labels) -> list[Label]:
    blocks = sorted(l for l in labels if l[0] == "block")
    loops = sorted((l for l in labels if l[0] == "loop"),
                   key=lambda l: -l[1])
    return blocks + loops


def _close(step, d: int, start: Label) -> Transducer:
    """Breadth-first closure from the initial state; fixes the state order."""
    seen = {start}
    frontier = [start]
    edges = {}
    nsym = 1 << d
    while frontier:
        new = []
        for lab in frontier:
            for eps in range(nsym):
                tgt, bit = step(lab, eps)
                edges[lab, eps] = (tgt, bit)
                if tgt not in seen:
                    seen.add(tgt)
                    new.append(tgt)
        frontier = new
    order = _state_order(seen)
    index = {lab: i for i, lab in enumerate(order)}
    nxt = tuple(tuple(index[edges[lab, eps][0]] for eps in range(nsym))
                for lab in order)
    out = tuple(tuple(edges[lab, eps][1] for eps in range(nsym))
                for lab in order)
    return order, index, nxt, out


def ajsf_transducer_1d(ds: DigitSet) -> Transducer:
    """One-dimensional weight transducer, built from its five transition rules.

    Kept separate from the general construction so the two can be checked
    against each other.
    """
    w = ds.w
    lb, ub = ds.lbits, ds.ubits
    tun = 1 if ds.tilde_u == -1 else 0

    def entry(s, eps):
        s2, t2 = comparison_step(s, tun, eps, lb[0], ub[0])
        return ("block", s2, t2, 1, 0)

    def step(label, eps):
        if label[0] == "loop":
            s = label[1]
            if eps == s:
                return label, 0
            return entry(s, eps), 1
        _, s, t, i, _ = label
        if i < w - 1:
            s2, t2 = comparison_step(s, t, eps, lb[i], ub[i])
            return ("block", s2, t2, i + 1, 0), 0
        if t == 0 or (eps + s) % 2 == 0:
            return ("loop", (eps + s) // 2), 0
        return entry(s, eps), 1

    order, index, nxt, out = _close(step, 1, ("loop", 0))
    tr = Transducer(1, w, tuple(order), index[("loop", 0)], nxt, out, ds)
    assert tr.n_states < 4 * w - 2
    assert tr.initial == tr.n_states - 1
    return tr


def ajsf_transducer(ds: DigitSet, d: int, max_states: int = 500_000) -> Transducer:
    """Weight transducer for dimension-d expansions over D(l,u).

    Builds the provisional machine first (digit bumps that only fix parity),
    then layers the deferred-bump bookkeeping: C-annotated block copies that
    are pruned while the next w-1 input digits are compared against v, and
    whose block exits are those of the carry-substituted plain block state.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    w = ds.w
    half = 1 << (w - 1)
    lb, ub, vb = ds.lbits, ds.ubits, ds.vbits
    tun = 1 if ds.tilde_u == -1 else 0
    usmall_mask_bit = 1 if ds.u < half else 0
    full = (1 << d) - 1

    upper_bound = (1 << d) + (w - 1) * (1 << (2 * d)) * ((1 << d) - 1)
    if upper_bound > max_states:
        raise BudgetExceeded(
            f"up to {upper_bound} states before accessibility, budget {max_states}")

    def coords(mask):
        return [(mask >> j) & 1 for j in range(d)]

    def prov_entry(s, eps):
        s2 = t2 = 0
        for j, (sj, ej) in enumerate(zip(coords(s), coords(eps))):
            sj2, tj2 = comparison_step(sj, tun, ej, lb[0], ub[0])
            s2 |= sj2 << j
            t2 |= tj2 << j
        return s2, t2

    def block_exit(s, t, eps):
        parity = s ^ eps
        if t & parity == 0:
            return ("loop", s & eps), 0
        s2, t2 = prov_entry(s, eps)
        c2 = 0
        for j, (sj, ej, tj) in enumerate(zip(coords(s), coords(eps), coords(t))):
            if (sj + ej + lb[0]) % 2 == vb[0] and tj == 0:
                c2 |= 1 << j
        return ("block", s2, t2, 1, c2), 1

    def step(label, eps):
        if label[0] == "loop":
            s = label[1]
            if eps == s:
                return label, 0
            s2, t2 = prov_entry(s, eps)
            return ("block", s2, t2, 1, 0), 1
        _, s, t, i, c = label
        if i < w - 1:
            s2 = t2 = 0
            for j, (sj, tj, ej) in enumerate(zip(coords(s), coords(t), coords(eps))):
                sj2, tj2 = comparison_step(sj, tj, ej, lb[i], ub[i])
                s2 |= sj2 << j
                t2 |= tj2 << j
            c2 = c
            for j, (sj, ej) in enumerate(zip(coords(s), coords(eps))):
                if (sj + ej + lb[i]) % 2 != vb[i]:
                    c2 &= ~(1 << j)
            return ("block", s2, t2, i + 1, c2), 0
        if c:
            s = (s & ~c) | (c if usmall_mask_bit else 0)
            t = t & ~c
        return block_exit(s, t, eps)

    order, index, nxt, out = _close(step, d, ("loop", 0))
    tr = Transducer(d, w, tuple(order), index[("loop", 0)], nxt, out, ds)
    assert tr.n_states < (1 << (3 * d)) * w
    assert tr.initial == tr.n_states - 1
    for lab in order:
        assert lab[0] == "loop" or lab[4] != full
    return tr


def run(tr: Transducer, n) -> int:
    """Weight of the optimal expansion, read off the binary input plus padding."""
    vec = (n,) if isinstance(n, int) else tuple(int(x) for x in n)
    if len(vec) != tr.d:
        raise ValueError(f"expected {tr.d} components, got {len(vec)}")
    if any(x < 0 for x in vec):
        raise ValueError("transducer input must be non-negative")
    nbits = max(x.bit_length() for x in vec) if any(vec) else 0
    state = tr.initial
    weight = 0
    for p in range(nbits):
        sym = 0
        for j, x in enumerate(vec):
            sym |= ((x >> p) & 1) << j
        weight += tr.out[state][sym]
        state = tr.nxt[state][sym]
    for _ in range(tr.reset_len):
        weight += tr.out[state][0]
        state = tr.nxt[state][0]
    assert state == tr.initial, "reset padding did not return to the initial state"
    return weight


def reset_check(tr: Transducer) -> bool:
    """True iff reading 4w zeros from every state ends in the initial state."""
    for state in range(tr.n_states):
        for _ in range(tr.reset_len):
            state = tr.nxt[state][0]
        if state != tr.initial:
            return False
    return True


def export_dot(tr: Transducer) -> str:
    """Deterministic DOT text; parallel edges are merged into one label."""
    lines = ["digraph transducer {"]
    for i, lab in enumerate(tr.states):
        shape = "doublecircle" if i == tr.initial else "circle"
        lines.append(f'  "{state_name(lab, tr.d)}" [shape={shape}];')
    merged: dict[tuple[int, int], list[str]] = {}
    for i in range(tr.n_states):
        for sym in range(tr.n_symbols):
            key = (i, tr.nxt[i][sym])
            merged.setdefault(key, []).append(
                f"{_bitstr(sym, tr.d)}|{tr.out[i][sym]}")
    for (src, dst), labels in sorted(merged.items()):
        a = state_name(tr.states[src], tr.d)
        b = state_name(tr.states[dst], tr.d)
        lines.append(f'  "{a}" -> "{b}" [label="{", ".join(labels)}"];')
    lines.append("}")
    return "\n".join(lines)


def transducer_to_json(tr: Transducer) -> str:
    names = [state_name(lab, tr.d) for lab in tr.states]
    transitions = [
        {"from": names[i], "input": _bitstr(sym, tr.d),
         "output": tr.out[i][sym], "to": names[tr.nxt[i][sym]]}
        for i in range(tr.n_states) for sym in range(tr.n_symbols)
    ]
    return json.dumps({
        "dimension": tr.d, "w": tr.w, "states": names,
        "initial": names[tr.initial], "transitions": transitions,
    }, indent=1)


def transducer_from_json(text: str) -> Transducer:
    obj = json.loads(text)
    d, w = obj["dimension"], obj["w"]
    names = list(obj["states"])
    index = {name: i for i, name in enumerate(names)}
    nsym = 1 << d
    nxt = [[None] * nsym for _ in names]
    out = [[None] * nsym for _ in names]
    for t in obj["transitions"]:
        sym = int(t["input"][::-1], 2)
        i = index[t["from"]]
        nxt[i][sym] = index[t["to"]]
        out[i][sym] = int(t["output"])
    if any(x is None for row in nxt for x in row):
        raise ValueError("transition table incomplete")
    labels = tuple(("opaque", name) for name in names)
    return Transducer(d, w, labels, index[obj["initial"]],
                      tuple(tuple(r) for r in nxt), tuple(tuple(r) for r in out))


def trivial_transducer() -> Transducer:
    """Single looping state mapping every input to output 0."""
    return Transducer(1, 2, (("loop", 0),), 0, ((0, 0),), ((0, 0),))
