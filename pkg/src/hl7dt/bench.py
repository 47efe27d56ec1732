"""Packed versus decomposed storage of physical quantities.

Two stores hold the same synthetic PQ column:

packed
    one fixed-width record per row (nullflavor nibble, interned unit id,
    canonical magnitude as int64 mantissa and int8 decimal exponent).
    Scans run vectorized over the records; the index is an array of
    12-byte keys whose byte order is the equal-semantics total order, so
    probes are plain binary searches on bytes.

decomposed
    three string columns (value literal, unit, nullflavor token).  Every
    comparison re-parses the literal and canonicalizes the unit; the index
    keeps the strings in key order and re-parses at each binary-search step.

Both stores must return the same row ids for every query.
"""
from __future__ import annotations

import bisect
import csv
import io
import statistics
import struct
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .nullflavor import BY_CODE, NullFlavor
from .numeric import decimal_parts, terminating_exponent, to_fraction
from .quantity import PQ, _POSITIONED, pq_parse, sort_key
from .ucum import UnitRegistry, registry_or_default

REPRESENTATIONS = ("packed", "decomposed")
OPERATIONS = ("insert", "seq_scan", "index_create", "index_size", "eq_scan", "range_scan")

NULL_FLAVORS = (NullFlavor.TRC, NullFlavor.NINF, NullFlavor.PINF, NullFlavor.NAV,
                NullFlavor.UNK, NullFlavor.MSK, NullFlavor.OTH)
UNIT_PREFIXES = ("k", "c", "m", "d", "u")
MAX_FACTOR_MANTISSA = 10 ** 9
TID_BYTES = 6

ROW_DTYPE = np.dtype([("nf", "u1"), ("unit", "u2"), ("mant", "i8"), ("exp", "i1")])
KEY_DTYPE = np.dtype([("dims", ">u2"), ("cls", "u1"), ("ae", "u1"), ("m", ">u8")])
KEY_BYTES = KEY_DTYPE.itemsize

# key classes within one dimension
CLS_NINF, CLS_NEG, CLS_ZERO, CLS_TRC, CLS_POS, CLS_PINF, CLS_NULL, CLS_OTH = range(8)
_NULL_RANK = {nf: i for i, nf in enumerate(sorted(NullFlavor, key=lambda f: f.value))}
_POW10 = np.array([10 ** k for k in range(19)], dtype=np.int64)
_NORM = 10 ** 18


@dataclass(frozen=True)
class BenchConfig:
    n: int = 100_000
    seed: int = 7
    runs: int = 20
    rep: int = 50  # probes per timed run of an index lookup
    budget_s: float | None = 4.0  # per operation; None times every run
    sigma: float = 10000.0
    mu: float = 0.0
    n_units: int = 20
    null_fraction: float = 0.001

    def __post_init__(self):
        if self.n <= 0:
            raise ValueError("n must be positive")
        if self.runs < 1 or self.rep < 1:
            raise ValueError("runs and rep must be at least 1")


@dataclass
class Dataset:
    units: list[str]  # the drawn unit pool, "m" last
    rows: list[tuple[str, str, str]]  # (value literal, unit, nullflavor token)

    def literal(self, i: int) -> str:
        value, unit, nf = self.rows[i]
        return f"{nf} {unit}" if nf else f"{value} {unit}"


# generation


def _factor_digits(f: Fraction) -> Optional[tuple[int, int]]:
    """``f`` as ``mant * 10**exp`` with integer mant, or None if not a decimal."""
    k = terminating_exponent(f.denominator)
    if k is None:
        return None
    mant, exp = f.numerator * 10 ** k // f.denominator, -k
    while mant % 10 == 0:
        mant //= 10
        exp += 1
    return mant, exp


def candidate_units(reg: UnitRegistry | None = None) -> list[str]:
    """Registry units whose canonical factor is a short exact decimal."""
    reg = registry_or_default(reg)
    out = []
    for u in reg.simple_units(UNIT_PREFIXES):
        if u == "m":
            continue
        digits = _factor_digits(reg.canonical(u).factor)
        if digits is not None and digits[0] < MAX_FACTOR_MANTISSA and -40 < digits[1] < 40:
            out.append(u)
    return out


def bench_generate(cfg: BenchConfig, reg: UnitRegistry | None = None) -> Dataset:
    rng = np.random.default_rng(cfg.seed)
    pool = candidate_units(reg)
    picked = rng.choice(len(pool), size=cfg.n_units, replace=False)
    units = [pool[i] for i in picked] + ["m"]
    unit_idx = rng.integers(0, len(units), cfg.n)
    values = np.round(rng.normal(cfg.mu, cfg.sigma, cfg.n), 4) + 0.0
    nulls = rng.random(cfg.n) < cfg.null_fraction
    flavors = rng.integers(0, len(NULL_FLAVORS), cfg.n)
    rows = []
    for i in range(cfg.n):
        unit = units[unit_idx[i]]
        if nulls[i]:
            rows.append(("", unit, NULL_FLAVORS[flavors[i]].value))
        else:
            rows.append((f"{values[i]:.4f}", unit, ""))
    # the equality probe and the trc semantics always have a witness
    rows[cfg.n // 2] = ("1200.0000", "m", "")
    if cfg.n > 1:
        rows[cfg.n // 3] = ("", "m", "trc")
    return Dataset(units, rows)


# queries


@dataclass(frozen=True)
class Query:
    """A range over one dimension, bounds given as positions."""
    dims: tuple
    lo: tuple
    hi: tuple
    lo_closed: bool = True
    hi_closed: bool = True

    def admits(self, pos: tuple) -> bool:
        above = pos > self.lo or (self.lo_closed and pos == self.lo)
        below = pos < self.hi or (self.hi_closed and pos == self.hi)
        return above and below


def _bound_position(p: PQ, reg: UnitRegistry) -> tuple:
    if p.nullflavor is None:
        return (1, p.magnitude(reg), 0)
    try:
        return _POSITIONED[p.nullflavor]
    except KeyError:
        raise ValueError(f"{p} has no position and cannot bound a range") from None


def make_query(lo: PQ | str, hi: PQ | str, lo_closed: bool = True, hi_closed: bool = True,
               reg: UnitRegistry | None = None) -> Query:
    reg = registry_or_default(reg)
    lo = pq_parse(lo, reg) if isinstance(lo, str) else lo
    hi = pq_parse(hi, reg) if isinstance(hi, str) else hi
    units = [p.unit for p in (lo, hi) if p.unit is not None]
    if not units:
        raise ValueError("a range needs at least one bound with a unit")
    dims = {reg.canonical(u).dims for u in units}
    if len(dims) > 1:
        raise ValueError(f"bounds {lo} and {hi} do not compare")
    return Query(dims.pop(), _bound_position(lo, reg), _bound_position(hi, reg), lo_closed, hi_closed)


def eq_query(p: PQ | str, reg: UnitRegistry | None = None) -> Query:
    return make_query(p, p, True, True, reg)


RANGE_QUERY = ("1.0 km", "1.2 km")
EQ_PROBE = "1.2 km"


# packed store


class PackedStore:
    def __init__(self, reg: UnitRegistry):
        self.reg = reg
        self.unit_ids: dict[str, int] = {}
        self.unit_names: list[str] = []
        self.unit_factor: list[tuple[int, int]] = []
        self.unit_dims_tuple: list[tuple] = []
        self.rows = np.zeros(0, dtype=ROW_DTYPE)
        self.unit_dims = np.zeros(0, dtype=np.uint16)
        self.dims_ids: dict[tuple, int] = {}

    def _intern(self, unit: str) -> int:
        uid = self.unit_ids.get(unit)
        if uid is None:
            canon = self.reg.canonical(self.reg.parse(unit))
            digits = _factor_digits(canon.factor)
            if digits is None:
                raise ValueError(f"unit {unit} has no exact decimal factor")
            uid = len(self.unit_names)
            self.unit_ids[unit] = uid
            self.unit_names.append(unit)
            self.unit_factor.append(digits)
            self.unit_dims_tuple.append(canon.dims)
        return uid

    def _finish_units(self) -> None:
        # dims ids follow the order of dims tuples so keys sort like sort_key
        ordered = sorted(set(self.unit_dims_tuple))
        self.dims_ids = {d: i for i, d in enumerate(ordered)}
        self.unit_dims = np.array([self.dims_ids[d] for d in self.unit_dims_tuple], dtype=np.uint16)

    def insert(self, rows: list[tuple[str, str, str]]) -> None:
        out = np.zeros(len(rows), dtype=ROW_DTYPE)
        nfs, uids, mants, exps = out["nf"], out["unit"], out["mant"], out["exp"]
        for i, (value, unit, nf) in enumerate(rows):
            uid = self._intern(unit)
            uids[i] = uid
            if nf:
                nfs[i] = NullFlavor(nf).code
                continue
            m, e, _ = decimal_parts(value)
            fm, fe = self.unit_factor[uid]
            mants[i] = m * fm
            exps[i] = e + fe
        self.rows = out
        self._finish_units()

    def decode(self, i: int) -> tuple:
        r = self.rows[i]
        dims = self.unit_dims_tuple[r["unit"]]
        if r["nf"]:
            return (BY_CODE[int(r["nf"])], dims, None)
        return (None, dims, to_fraction(int(r["mant"]), int(r["exp"])))

    # scans

    def seq_scan(self, q: Query) -> np.ndarray:
        rows = self.rows
        dims_id = self.dims_ids.get(q.dims)
        if dims_id is None:
            return np.zeros(0, dtype=np.int64)
        in_dims = self.unit_dims[rows["unit"]] == dims_id
        nf = rows["nf"]
        mask = np.zeros(len(rows), dtype=bool)
        finite = in_dims & (nf == 0)
        lower = _finite_lower(q)
        upper = _finite_upper(q)
        if lower is not False and upper is not False:
            mant, exp = rows["mant"], rows["exp"]
            for e in np.unique(exp[finite]):
                sel = finite & (exp == e)
                scale = Fraction(10) ** int(e)
                ok = sel
                if lower is not None:
                    bound, strict = lower
                    t = bound / scale
                    ok = ok & (mant >= _clip(_floor(t) + 1 if strict else _ceil(t)))
                if upper is not None:
                    bound, strict = upper
                    t = bound / scale
                    ok = ok & (mant <= _clip(_ceil(t) - 1 if strict else _floor(t)))
                mask |= ok
        for flavor, pos in _POSITIONED.items():
            if q.admits(pos):
                mask |= in_dims & (nf == flavor.code)
        return np.flatnonzero(mask)

    # index

    def keys(self) -> np.ndarray:
        r = self.rows
        return encode_keys(r["nf"], self.unit_dims[r["unit"]], r["mant"], r["exp"])

    def build_index(self) -> PackedIndex:
        keys = self.keys()
        order = np.argsort(keys, kind="stable")
        return PackedIndex(keys[order], order.astype(np.int64), self)

    def probe_key(self, pos: tuple, dims: tuple) -> Optional[bytes]:
        dims_id = self.dims_ids.get(dims)
        if dims_id is None:
            return None
        slot, mag, sub = pos
        if slot == 0:
            nf, mant, exp = NullFlavor.NINF.code, 0, 0
        elif slot == 2:
            nf, mant, exp = NullFlavor.PINF.code, 0, 0
        elif sub:
            nf, mant, exp = NullFlavor.TRC.code, 0, 0
        else:
            digits = _factor_digits(mag) if mag else (0, 0)
            if digits is None:
                raise ValueError(f"probe {mag} is not a finite decimal")
            nf, (mant, exp) = 0, digits
        return encode_key(nf, dims_id, mant, exp)


def _floor(t: Fraction) -> int:
    return t.numerator // t.denominator


def _ceil(t: Fraction) -> int:
    return -((-t.numerator) // t.denominator)


_I64 = np.iinfo(np.int64)


def _clip(v: int) -> int:
    return max(_I64.min, min(_I64.max, v))


def _finite_lower(q: Query):
    """(bound, strict) on finite magnitudes, None for no bound, False for none pass."""
    slot, mag, sub = q.lo
    if slot == 0:
        return None
    if slot == 2:
        return False
    return mag, bool(sub) or not q.lo_closed


def _finite_upper(q: Query):
    slot, mag, sub = q.hi
    if slot == 2:
        return None
    if slot == 0:
        return False
    # a trc upper bound admits values <= 0
    return mag, not sub and not q.hi_closed


def encode_keys(nf, dims_id, mant, exp) -> np.ndarray:
    """Fixed-width byte keys whose memcmp order is the equal-semantics order."""
    n = len(nf)
    mant = mant.astype(np.int64)
    exp = exp.astype(np.int64)
    a = np.abs(mant)
    if np.any(a >= _NORM):
        raise OverflowError("mantissa too wide for a packed key")
    nd = np.searchsorted(_POW10, a, side="right")
    norm = a * _POW10[np.clip(18 - nd, 0, 18)]
    adj = exp + nd - 1
    out = np.zeros(n, dtype=KEY_DTYPE)
    out["dims"] = dims_id
    cls = np.full(n, CLS_NULL, dtype=np.uint8)
    ae = np.zeros(n, dtype=np.int64)
    m = np.zeros(n, dtype=np.uint64)
    finite = nf == 0
    pos = finite & (mant > 0)
    neg = finite & (mant < 0)
    if np.any(adj[pos | neg] > 127) or np.any(adj[pos | neg] < -128):
        raise OverflowError("exponent out of range for a packed key")
    cls[finite & (mant == 0)] = CLS_ZERO
    cls[pos] = CLS_POS
    ae[pos] = adj[pos] + 128
    m[pos] = norm[pos]
    cls[neg] = CLS_NEG
    ae[neg] = 127 - adj[neg]
    m[neg] = _NORM - norm[neg]
    cls[nf == NullFlavor.NINF.code] = CLS_NINF
    cls[nf == NullFlavor.TRC.code] = CLS_TRC
    cls[nf == NullFlavor.PINF.code] = CLS_PINF
    cls[nf == NullFlavor.OTH.code] = CLS_OTH
    for flavor, rank in _NULL_RANK.items():
        if flavor not in _POSITIONED and flavor is not NullFlavor.OTH:
            ae[nf == flavor.code] = rank
    out["cls"] = cls
    out["ae"] = ae
    out["m"] = m
    return out.view(f"S{KEY_BYTES}")


_FLAVOR_CLASS = {
    NullFlavor.NINF: CLS_NINF, NullFlavor.TRC: CLS_TRC,
    NullFlavor.PINF: CLS_PINF, NullFlavor.OTH: CLS_OTH,
}


def encode_key(nf: int, dims_id: int, mant: int, exp: int) -> bytes:
    """Scalar twin of encode_keys, used for probes."""
    ae = m = 0
    if nf:
        flavor = BY_CODE[nf]
        cls = _FLAVOR_CLASS.get(flavor, CLS_NULL)
        if cls == CLS_NULL:
            ae = _NULL_RANK[flavor]
    elif mant == 0:
        cls = CLS_ZERO
    else:
        a = abs(mant)
        nd = len(str(a))
        if nd > 18:
            raise OverflowError("mantissa too wide for a packed key")
        norm, adj = a * 10 ** (18 - nd), exp + nd - 1
        if not -128 <= adj <= 127:
            raise OverflowError("exponent out of range for a packed key")
        if mant > 0:
            cls, ae, m = CLS_POS, adj + 128, norm
        else:
            cls, ae, m = CLS_NEG, 127 - adj, _NORM - norm
    return struct.pack(">HBBQ", dims_id, cls, ae, m)


@dataclass
class PackedIndex:
    keys: np.ndarray
    tids: np.ndarray
    store: PackedStore

    @property
    def nbytes(self) -> int:
        return len(self.keys) * (KEY_BYTES + TID_BYTES)

    def range(self, q: Query) -> np.ndarray:
        lo = self.store.probe_key(q.lo, q.dims)
        hi = self.store.probe_key(q.hi, q.dims)
        if lo is None or hi is None:
            return np.zeros(0, dtype=np.int64)
        i = np.searchsorted(self.keys, lo, side="left" if q.lo_closed else "right")
        j = np.searchsorted(self.keys, hi, side="right" if q.hi_closed else "left")
        return np.sort(self.tids[i:max(i, j)])


# decomposed store


class DecomposedStore:
    def __init__(self, reg: UnitRegistry):
        self.reg = reg
        self.values: list[str] = []
        self.units: list[str] = []
        self.flavors: list[str] = []

    def insert(self, rows: list[tuple[str, str, str]]) -> None:
        values, units, flavors = [], [], []
        parse = self.reg.parse
        for value, unit, nf in rows:
            parse(unit)
            if nf:
                NullFlavor(nf)
            else:
                decimal_parts(value)
            values.append(value)
            units.append(unit)
            flavors.append(nf)
        self.values, self.units, self.flavors = values, units, flavors

    def row_pq(self, value: str, unit: str, nf: str) -> PQ:
        u = self.reg.parse(unit)
        if nf:
            return PQ(None, u, NullFlavor(nf))
        m, e, _ = decimal_parts(value)
        return PQ(to_fraction(m, e), u)

    def decode(self, i: int) -> tuple:
        p = self.row_pq(self.values[i], self.units[i], self.flavors[i])
        dims = self.reg.canonical(p.unit).dims
        return (p.nullflavor, dims, None if p.is_null else p.magnitude(self.reg))

    def seq_scan(self, q: Query) -> np.ndarray:
        canonical = self.reg.canonical
        hits = []
        for i, (value, unit, nf) in enumerate(zip(self.values, self.units, self.flavors)):
            c = canonical(unit)
            if c.dims != q.dims:
                continue
            if nf:
                pos = _POSITIONED.get(NullFlavor(nf))
                if pos is None:
                    continue
            else:
                m, e, _ = decimal_parts(value)
                pos = (1, to_fraction(m, e) * c.factor, 0)
            if q.admits(pos):
                hits.append(i)
        return np.array(hits, dtype=np.int64)

    def _key(self, entry) -> tuple:
        """sort_key of a stored row, computed from the strings."""
        value, unit, nf = entry
        if nf:
            return sort_key(self.row_pq(value, unit, nf), self.reg)
        c = self.reg.canonical(unit)
        m, e, _ = decimal_parts(value)
        return ((0, c.dims), 1, to_fraction(m, e) * c.factor, 0)

    def build_index(self) -> DecomposedIndex:
        entries = list(zip(self.values, self.units, self.flavors))
        keys = [self._key(e) for e in entries]
        order = sorted(range(len(entries)), key=keys.__getitem__)
        return DecomposedIndex([entries[i] for i in order], order, self)


@dataclass
class DecomposedIndex:
    entries: list
    tids: list
    store: DecomposedStore

    @property
    def nbytes(self) -> int:
        return sum(len(v) + len(u) + len(f) + 3 + TID_BYTES for v, u, f in self.entries)

    def _probe(self, pos: tuple, dims: tuple, side: str) -> int:
        probe = ((0, dims),) + _slot_key(pos)
        fn = bisect.bisect_left if side == "left" else bisect.bisect_right
        return fn(self.entries, probe, key=self.store._key)

    def range(self, q: Query) -> np.ndarray:
        i = self._probe(q.lo, q.dims, "left" if q.lo_closed else "right")
        j = self._probe(q.hi, q.dims, "right" if q.hi_closed else "left")
        return np.sort(np.array(self.tids[i:max(i, j)], dtype=np.int64))


def _slot_key(pos: tuple) -> tuple:
    """sort_key tail (after dims) for a bound position."""
    slot, mag, sub = pos
    return ((0, 1, 2)[slot], mag, sub)


# harness


def make_store(representation: str, reg: UnitRegistry | None = None):
    reg = registry_or_default(reg)
    if representation == "packed":
        return PackedStore(reg)
    if representation == "decomposed":
        return DecomposedStore(reg)
    raise ValueError(f"unknown representation {representation!r}")


MIN_RUNS = 3


def _time(fn: Callable[[], object], runs: int, per: int = 1,
          budget_s: float | None = None) -> tuple[float, float]:
    """Median and mean ns per call over ``runs`` timed calls after a warm-up.

    With a budget, stop early once the timed calls exceed it, keeping at
    least MIN_RUNS samples.
    """
    fn()  # warm-up, discarded
    samples = []
    spent = 0
    for _ in range(runs):
        t0 = time.perf_counter_ns()
        fn()
        dt = time.perf_counter_ns() - t0
        samples.append(dt / per)
        spent += dt
        if budget_s is not None and len(samples) >= MIN_RUNS and spent > budget_s * 1e9:
            break
    return statistics.median(samples), statistics.fmean(samples)


@dataclass
class Measurement:
    representation: str
    operation: str
    n: int
    median_ns: Optional[float]
    mean_ns: Optional[float]
    index_bytes: Optional[int] = None


@dataclass
class RunResult:
    representation: str
    measurements: list[Measurement]
    results: dict = field(default_factory=dict)


def bench_run(cfg: BenchConfig, representation: str, data: Dataset | None = None,
              reg: UnitRegistry | None = None) -> RunResult:
    reg = registry_or_default(reg)
    data = data if data is not None else bench_generate(cfg, reg)
    rq = make_query(*RANGE_QUERY, reg=reg)
    eq = eq_query(EQ_PROBE, reg)

    def insert():
        s = make_store(representation, reg)
        s.insert(data.rows)
        return s

    out = []

    def record(op, timing, nbytes=None):
        med, mean = timing if timing else (None, None)
        out.append(Measurement(representation, op, cfg.n, med, mean, nbytes))

    record("insert", _time(insert, cfg.runs, budget_s=cfg.budget_s))
    store = insert()
    record("seq_scan", _time(lambda: store.seq_scan(rq), cfg.runs, budget_s=cfg.budget_s))
    record("index_create", _time(store.build_index, cfg.runs, budget_s=cfg.budget_s))
    index = store.build_index()
    record("index_size", None, index.nbytes)

    def probes(q):
        def fn():
            for _ in range(cfg.rep):
                index.range(q)
        return fn

    record("eq_scan", _time(probes(eq), cfg.runs, cfg.rep, cfg.budget_s))
    record("range_scan", _time(probes(rq), cfg.runs, cfg.rep, cfg.budget_s))
    results = {
        "insert": [store.decode(i) for i in range(cfg.n)],
        "seq_scan": store.seq_scan(rq).tolist(),
        "index_order": list(index.tids),
        "eq_scan": index.range(eq).tolist(),
        "range_scan": index.range(rq).tolist(),
    }
    return RunResult(representation, out, results)


RESULT_SETS = ("insert", "seq_scan", "index_order", "eq_scan", "range_scan")


def compare_results(a: RunResult, b: RunResult) -> dict[str, bool]:
    return {k: a.results[k] == b.results[k] for k in RESULT_SETS}


@dataclass
class BenchReport:
    configs: list[BenchConfig]
    units: dict[int, list[str]]
    measurements: list[Measurement]
    agreement: dict[int, dict[str, bool]]
    range_fraction: dict[int, float]


def run_bench(ns, seed: int = 7, runs: int = 20, rep: int = 50,
              budget_s: float | None = 4.0, reg: UnitRegistry | None = None,
              log: Callable[[str], None] | None = None) -> BenchReport:
    reg = registry_or_default(reg)
    configs, units, measurements, agreement, fraction = [], {}, [], {}, {}
    for n in ns:
        cfg = BenchConfig(n=n, seed=seed, runs=runs, rep=rep, budget_s=budget_s)
        data = bench_generate(cfg, reg)
        runs_by_rep = {}
        for representation in REPRESENTATIONS:
            if log:
                log(f"n={n} {representation}")
            runs_by_rep[representation] = bench_run(cfg, representation, data, reg)
            measurements.extend(runs_by_rep[representation].measurements)
        configs.append(cfg)
        units[n] = data.units
        agreement[n] = compare_results(runs_by_rep["packed"], runs_by_rep["decomposed"])
        fraction[n] = len(runs_by_rep["packed"].results["range_scan"]) / n
    return BenchReport(configs, units, measurements, agreement, fraction)


CSV_COLUMNS = ("representation", "operation", "n", "median_ns", "mean_ns", "index_bytes")


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.0f}"
    return str(v)


def report_csv(report: BenchReport) -> str:
    buf = io.StringIO()
    if report.configs:
        cfg = report.configs[0]
        buf.write(f"# seed={cfg.seed} runs={cfg.runs} rep={cfg.rep} budget_s={cfg.budget_s}\n")
    for n, units in report.units.items():
        buf.write(f"# units n={n}: {' '.join(units)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for m in report.measurements:
        w.writerow([m.representation, m.operation, m.n, _cell(m.median_ns),
                    _cell(m.mean_ns), _cell(m.index_bytes)])
    return buf.getvalue()


def read_csv(text: str) -> list[Measurement]:
    lines = [line for line in text.splitlines() if line and not line.startswith("#")]
    out = []
    for row in csv.DictReader(lines):
        num = lambda s: float(s) if s else None  # noqa: E731
        out.append(Measurement(row["representation"], row["operation"], int(row["n"]),
                               num(row["median_ns"]), num(row["mean_ns"]),
                               int(row["index_bytes"]) if row["index_bytes"] else None))
    return out
