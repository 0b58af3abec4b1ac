"""Power-level calculus for superposition coding.

Transmit signals are stacks of layers, each occupying an interval of power
exponents [bottom, top] relative to unit power (top <= 0, E|X|^2 ~ P^top) and
carrying a GDoF rate.  A receiver sees each layer shifted by its link
exponent (1 direct, alpha cross) and decodes messages successively: the SINR
exponent of a step is the signal's received top minus the strongest
not-yet-decoded content (or the noise floor at exponent 0), because
P^a + P^b ~ P^max(a,b) at large P.  A step passes iff its SINR exponent is at
least the message's GDoF.  O(1) power factors are dropped throughout; they
belong to the finite-SNR simulator.

Two extensions beyond plain one-message-at-a-time peeling:

* relayed combinations ("combo" layers) represent an amplify-and-forward
  residual: the undecoded leftover of a previous hop, forwarded with all
  relative content levels preserved.  Their children expand into ordinary
  view entries, so decoding a message later removes its content from every
  combo it rides in (receivers know all previous-hop channels and codebooks).

* a decode step may name a group of messages decoded jointly.  Feasibility is
  the multiple-access polymatroid at the exponent level: for every subset S
  of the group, sum of GDoF over S <= (strongest received exponent in S)
  minus the floor set by non-members.  Successive feasibility implies group
  feasibility, so groups only ever relax the calculus; they are required by
  the decode-and-forward operation of the strong half of the weak regime.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations

__all__ = [
    "Child",
    "Layer",
    "TransmitPlan",
    "ViewEntry",
    "ReceiverView",
    "DecodeStep",
    "DecodeReport",
    "PlanError",
    "validate_plan",
    "received_view",
    "decode_feasible",
    "residual_after",
]

FR0 = Fraction(0)


class PlanError(ValueError):
    """A transmit plan or decode order violates a structural invariant."""


@dataclass(frozen=True)
class Child:
    """One codeword's content inside a relayed combination.

    Offsets are relative to the combination's top exponent and non-positive;
    ``instance`` distinguishes codewords of the same message encoded at
    different hops (all of them become reconstructable once the message is
    decoded anywhere).
    """

    message: str
    rel_top: Fraction
    rel_bottom: Fraction
    gdof: Fraction
    instance: str = ""

    def __post_init__(self):
        if self.rel_top > 0 or self.rel_bottom > self.rel_top:
            raise PlanError(f"bad child offsets for {self.message}: "
                            f"[{self.rel_bottom}, {self.rel_top}]")


@dataclass(frozen=True)
class Layer:
    """One superposed codeword (fresh) or forwarded residual (combo)."""

    message: str
    top: Fraction
    bottom: Fraction
    gdof: Fraction = FR0
    kind: str = "fresh"  # fresh | combo
    children: tuple[Child, ...] = ()

    def __post_init__(self):
        if self.top > 0:
            raise PlanError(f"layer {self.message}: top {self.top} > 0")
        if self.bottom > self.top:
            raise PlanError(f"layer {self.message}: bottom above top")
        if self.gdof < 0:
            raise PlanError(f"layer {self.message}: negative gdof")
        if self.kind == "fresh" and self.gdof > self.width:
            raise PlanError(f"layer {self.message}: gdof {self.gdof} exceeds "
                            f"interval width {self.width}")
        if self.kind == "combo" and self.children:
            offs = [c.rel_top for c in self.children]
            if any(o > 0 for o in offs):
                raise PlanError(f"combo {self.message}: child above combo top")

    @property
    def width(self) -> Fraction:
        return self.top - self.bottom

    def amplified_to(self, target_top: Fraction) -> "Layer":
        """Rescale the whole layer so its top exponent becomes target_top.

        Children move uniformly with the layer, preserving relative levels.
        """
        shift = target_top - self.top
        return replace(self, top=self.top + shift, bottom=self.bottom + shift)


@dataclass(frozen=True)
class TransmitPlan:
    """The ordered superposition stack of one node at one hop."""

    hop: int
    node: int  # 1 or 2
    layers: tuple[Layer, ...]
    sparse: bool = True  # False demands gdof == width and contiguity

    def messages(self) -> list[str]:
        return [ly.message for ly in self.layers]


def validate_plan(plan: TransmitPlan) -> None:
    """Check the stack invariants; raise PlanError on the first violation.

    Tops strictly decrease, intervals do not overlap, the topmost layer sits
    at exponent 0, and (for dense plans) every fresh layer fills its interval
    exactly with no gaps.
    """
    if not plan.layers:
        raise PlanError("empty plan")
    if plan.layers[0].top != 0:
        raise PlanError(f"topmost layer at {plan.layers[0].top}, expected 0")
    seen = set()
    for ly in plan.layers:
        if ly.message in seen:
            raise PlanError(f"duplicate layer message {ly.message}")
        seen.add(ly.message)
    for above, below in zip(plan.layers, plan.layers[1:]):
        if below.top >= above.top:
            raise PlanError(f"tops not strictly decreasing at {below.message}")
        if below.top > above.bottom:
            raise PlanError(f"layers {above.message}/{below.message} overlap")
        if not plan.sparse and below.top != above.bottom:
            raise PlanError(f"dense plan has a gap above {below.message}")
    if not plan.sparse:
        for ly in plan.layers:
            if ly.kind == "fresh" and ly.gdof != ly.width:
                raise PlanError(f"dense plan: layer {ly.message} is sparse")


# ---------------------------------------------------------------------------
# receiver view
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ViewEntry:
    """One codeword content as seen by a receiver, in received exponents."""

    message: str
    top: Fraction
    bottom: Fraction
    gdof: Fraction
    instance: str
    link: str  # direct | cross


@dataclass(frozen=True)
class ReceiverView:
    hop: int
    node: int
    alpha: Fraction
    entries: tuple[ViewEntry, ...]

    def live(self, known: set[str]) -> list[ViewEntry]:
        return [e for e in self.entries if e.message not in known]


def _expand(layer: Layer, shift: Fraction, link: str, hop: int, node: int):
    tag = f"h{hop}n{node}"
    if layer.kind == "fresh":
        yield ViewEntry(layer.message, layer.top + shift, layer.bottom + shift,
                        layer.gdof, f"{layer.message}@{tag}", link)
    else:
        for c in layer.children:
            yield ViewEntry(c.message, layer.top + shift + c.rel_top,
                            layer.top + shift + c.rel_bottom, c.gdof,
                            c.instance or f"{c.message}@{tag}", link)


def received_view(plans, alpha: Fraction, receiver: int) -> ReceiverView:
    """Expand a hop's two transmit plans into the named receiver's view.

    ``plans`` is the (node-1, node-2) pair for one hop; the receiver index
    selects which plan arrives on the strength-1 direct link, the other
    arrives on the strength-alpha cross link.  Combo layers contribute one
    entry per child.
    """
    plan1, plan2 = plans
    if plan1.hop != plan2.hop:
        raise PlanError("plans belong to different hops")
    if receiver not in (1, 2):
        raise PlanError(f"receiver must be 1 or 2, got {receiver}")
    for p in plans:
        validate_plan(p)
    direct = plan1 if receiver == 1 else plan2
    cross = plan2 if receiver == 1 else plan1
    entries: list[ViewEntry] = []
    for ly in direct.layers:
        entries.extend(_expand(ly, Fraction(1), "direct", direct.hop, direct.node))
    for ly in cross.layers:
        entries.extend(_expand(ly, Fraction(alpha), "cross", cross.hop, cross.node))
    entries.sort(key=lambda e: (e.top, e.bottom), reverse=True)
    return ReceiverView(plan1.hop, receiver, Fraction(alpha), tuple(entries))


# ---------------------------------------------------------------------------
# successive (and grouped) decoding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DecodeStep:
    message: str
    signal: Fraction
    interference: Fraction
    sinr: Fraction
    required: Fraction
    passed: bool
    group: tuple[str, ...] | None = None


@dataclass(frozen=True)
class DecodeReport:
    steps: tuple[DecodeStep, ...]
    decoded: frozenset[str]
    residual: Layer | None

    @property
    def ok(self) -> bool:
        return all(s.passed for s in self.steps)

    def decoded_gdof(self, messages) -> Fraction:
        """Total GDoF of the given messages, all of which must be decoded."""
        req = dict(self._requirements)
        total = FR0
        for m in messages:
            if m not in self.decoded:
                raise KeyError(f"{m} was not decoded")
            total += req[m]
        return total

    @property
    def _requirements(self):
        return tuple((s.message, s.required) for s in self.steps)


def _required_gdof(view: ReceiverView, message: str) -> Fraction:
    gs = {e.gdof for e in view.entries if e.message == message}
    if not gs:
        raise KeyError(f"unknown message {message} in decode order")
    if len(gs) > 1:
        raise PlanError(f"inconsistent gdof declarations for {message}")
    return gs.pop()


def decode_feasible(view: ReceiverView, order) -> DecodeReport:
    """Walk a decode order and report per-step SINR-exponent feasibility.

    ``order`` is a sequence whose elements are message ids or tuples of
    message ids (a jointly decoded group).  Decoded messages are removed from
    the view entirely, including their content inside forwarded residuals.
    The report's residual collects what remains above the noise floor.
    """
    known: set[str] = set()
    steps: list[DecodeStep] = []
    for step in order:
        group = tuple(step) if isinstance(step, (tuple, list, frozenset, set)) else (step,)
        req = {m: _required_gdof(view, m) for m in group}
        live = view.live(known)
        floor = max([FR0] + [e.top for e in live if e.message not in group])
        tops = {m: max(e.top for e in live if e.message == m) for m in group}
        if len(group) == 1:
            m = group[0]
            sinr = tops[m] - floor
            steps.append(DecodeStep(m, tops[m], floor, sinr, req[m],
                                    sinr >= req[m]))
        else:
            ok = True
            for r in range(1, len(group) + 1):
                for sub in combinations(group, r):
                    cap = max(tops[m] for m in sub) - floor
                    if sum(req[m] for m in sub) > cap:
                        ok = False
            for m in sorted(group, key=lambda m: tops[m], reverse=True):
                steps.append(DecodeStep(m, tops[m], floor, tops[m] - floor,
                                        req[m], ok, group=group))
        known.update(group)
    residual = residual_after(view, known)
    return DecodeReport(tuple(steps), frozenset(known), residual)


def residual_after(view: ReceiverView, decoded) -> Layer | None:
    """The relayed combination left above the noise floor after decoding.

    Children keep their levels relative to the strongest leftover; content
    below the floor is clipped away (it is lost in noise and cannot be
    amplified back).  Returns None when nothing survives.
    """
    leftover = [e for e in view.live(set(decoded)) if e.top > 0]
    if not leftover:
        return None
    span_top = max(e.top for e in leftover)
    children = tuple(sorted(
        (Child(e.message, e.top - span_top, max(e.bottom, FR0) - span_top,
               e.gdof, e.instance) for e in leftover),
        key=lambda c: (c.rel_top, c.message), reverse=True))
    return Layer(message=f"residual@h{view.hop}n{view.node}", top=FR0,
                 bottom=-span_top, kind="combo", children=children)
