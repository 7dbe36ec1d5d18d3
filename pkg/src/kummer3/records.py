"""JSONL records: computed results and replayable fixtures."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable, Iterator

from sympy import Poly, symbols, sympify

from .radicals import poly_str

# JSON key -> attribute; keys copy the printed labels of the programs where one exists
_RESULT_KEYS = {
    "m": "m",
    "case": "case",
    "program": "program",
    "Val": "val",
    "k_1^ac": "ram_status",
    "Q^acyc": "Q_acyc",
    "polredbest(Q^acyc)": "Q_red",
    "J": "winner_index",
    "w": "winner",
    "Delta": "delta",
    "sigma": "sigma_flag",
    "method": "method",
    "I(q)": "q_interval",
    "eliminated_by": "eliminated_by",
    "accepted_primes": "accepted_primes",
    "one_root_events": "one_root_events",
    "soundness_ok": "soundness_ok",
    "H_k": "H_k",
    "T_k": "T_k",
    "H_kstar": "H_kstar",
    "#T_k^bp": "otbp",
    "capitulation": "capitulation",
    "conditional": "conditional",
    "timings": "timings",
    "error": "error",
}


@dataclass
class ResultRecord:
    m: int
    case: str | None = None
    program: str | None = None
    val: int | None = None
    ram_status: str | None = None
    Q_acyc: list | None = None  # [c2, c1, c0]
    Q_red: str | None = None
    winner_index: int | None = None
    winner: str | None = None
    delta: int | None = None
    sigma_flag: bool | None = None
    method: str | None = None
    q_interval: list | None = None
    eliminated_by: list = field(default_factory=list)  # [[J, q or "disc"], ...]
    accepted_primes: int | None = None
    one_root_events: list = field(default_factory=list)
    soundness_ok: bool | None = None
    H_k: list | None = None
    T_k: list | None = None
    H_kstar: list | None = None
    otbp: int | None = None
    capitulation: dict | None = None
    conditional: bool = False
    timings: dict = field(default_factory=dict)
    error: str | None = None
    extra: dict = field(default_factory=dict)  # unknown keys, preserved

    def to_dict(self) -> dict:
        d = {key: getattr(self, attr) for key, attr in _RESULT_KEYS.items()}
        if self.Q_acyc is not None:
            d["Q^acyc"] = poly_str(self.Q_acyc)
            d["Q^acyc_coeffs"] = list(self.Q_acyc)
        d.update(self.extra)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ResultRecord":
        d = dict(d)
        kw, extra = {}, {}
        coeffs = d.pop("Q^acyc_coeffs", None)
        for key, value in d.items():
            if key in _RESULT_KEYS:
                kw[_RESULT_KEYS[key]] = value
            else:
                extra[key] = value
        if "Q_acyc" in kw and kw["Q_acyc"] is not None:
            kw["Q_acyc"] = coeffs if coeffs is not None else parse_cubic(kw["Q_acyc"])
        return cls(**kw, extra=extra)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "ResultRecord":
        return cls.from_dict(json.loads(line))


_X = symbols("x")


def parse_cubic(text) -> list[int]:
    """Monic integral cubic, from "x^3-318*x-4067" or a coefficient list."""
    if isinstance(text, (list, tuple)):
        c = [int(v) for v in text]
        if len(c) == 4:
            if c[0] != 1:
                raise ValueError("cubic is not monic")
            c = c[1:]
        if len(c) != 3:
            raise ValueError("cubic needs three lower coefficients")
        return c
    P = Poly(sympify(str(text).replace("^", "**"), locals={"x": _X}), _X)
    c = P.all_coeffs()
    if P.degree() != 3 or c[0] != 1 or any(not v.is_integer for v in c):
        raise ValueError(f"{text!r} is not a monic integral cubic")
    return [int(v) for v in c[1:]]


# -- fixtures ------------------------------------------------------------------------


class FixtureError(ValueError):
    pass


_FIXTURE_KEYS = {
    "m": "m",
    "case": "case",
    "H_k": "H_k",
    "T_k": "T_k",
    "H_kstar": "H_kstar",
    "Val": "val",
    "k_1^ac": "ram_status",
    "Q^acyc": "Q_acyc",
    "H_(k_1^acyc)": "H_K",
    "norm_rows": "norm_rows",
    "verdict": "verdict",
    "kernel_order": "kernel_order",
    "source": "source",
}


@dataclass
class FixtureRecord:
    m: int
    case: str | None = None
    H_k: list | None = None
    T_k: list | None = None
    H_kstar: list | None = None
    val: int | None = None
    ram_status: str | None = None
    Q_acyc: list | None = None
    H_K: list | None = None
    norm_rows: list | None = None
    verdict: str | None = None
    kernel_order: int | None = None
    source: str | None = None
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        for name in ("H_k", "T_k", "H_kstar", "H_K"):
            inv = getattr(self, name)
            if inv is not None and not all(isinstance(d, int) and d > 0 for d in inv):
                raise ValueError(f"{name}: invariants must be positive integers")
        if self.norm_rows is not None:
            if self.H_K is None:
                raise ValueError("norm_rows given without H_(k_1^acyc)")
            if len(self.norm_rows) != len(self.H_K) or any(len(r) != len(self.H_K) for r in self.norm_rows):
                raise ValueError("norm_rows dimensions do not match H_(k_1^acyc)")

    def to_dict(self) -> dict:
        d = {}
        for key, attr in _FIXTURE_KEYS.items():
            v = getattr(self, attr)
            if v is not None:
                d[key] = poly_str(v) if attr == "Q_acyc" else v
        d.update(self.extra)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "FixtureRecord":
        kw, extra = {}, {}
        for key, value in d.items():
            if key in _FIXTURE_KEYS:
                kw[_FIXTURE_KEYS[key]] = value
            else:
                extra[key] = value
        if "m" not in kw:
            raise ValueError("missing m")
        if kw.get("Q_acyc") is not None:
            kw["Q_acyc"] = parse_cubic(kw["Q_acyc"])
        rec = cls(**kw, extra=extra)
        rec.validate()
        return rec


def ingest_fixture(path) -> list[FixtureRecord]:
    out = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            try:
                out.append(FixtureRecord.from_dict(json.loads(line)))
            except (ValueError, TypeError) as exc:
                raise FixtureError(f"{path}:{lineno}: {exc}") from exc
    return out


def three_part(inv) -> list[int]:
    out = []
    for d in inv:
        q = 1
        while d % 3 == 0:
            d //= 3
            q *= 3
        if q > 1:
            out.append(q)
    return sorted(out, reverse=True)


def compare(result: ResultRecord, fx: FixtureRecord) -> list[str]:
    """Names of the basis-independent fields on which result and fixture disagree."""
    from .layersearch import EQUAL, same_cubic_field

    diffs = []
    for attr in ("case", "val", "ram_status", "H_k", "T_k", "H_kstar"):
        want = getattr(fx, attr)
        if want is not None and getattr(result, attr) != want:
            diffs.append(attr)
    if fx.Q_acyc is not None:
        if result.Q_acyc is None or same_cubic_field(result.Q_acyc, fx.Q_acyc) != EQUAL:
            diffs.append("Q_acyc")
    cap = result.capitulation or {}
    if fx.H_K is not None:
        if three_part(cap.get("H_K") or []) != three_part(fx.H_K):
            diffs.append("H_K")
    if fx.norm_rows is not None and fx.H_K is not None:
        from .capitulation import capitulation_verdict

        h3 = cap.get("h3")
        status = result.ram_status
        if h3 is not None and status is not None:
            image, _, _, _ = capitulation_verdict(fx.norm_rows, fx.H_K, h3, status)
            if cap.get("image_order3") != image:
                diffs.append("norm_rows")
    # a claim about the norm image N(H_K) only is marked "scope": "norm_image"
    prefix = "norm_" if fx.extra.get("scope") == "norm_image" else ""
    for attr in ("verdict", "kernel_order"):
        want = getattr(fx, attr)
        if want is not None and cap.get(prefix + attr) != want:
            diffs.append(attr)
    return diffs


def write_jsonl(path, records: Iterable) -> int:
    n = 0
    with open(path, "w") as fh:
        for r in records:
            fh.write(r.to_json() + "\n")
            n += 1
    return n


def read_results(path) -> Iterator[ResultRecord]:
    with open(path) as fh:
        for line in fh:
            if line.strip():
                yield ResultRecord.from_json(line)


def report_to_dict(rep) -> dict[str, Any]:
    return asdict(rep)
