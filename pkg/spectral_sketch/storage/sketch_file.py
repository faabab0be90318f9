"""Binary sketch files.

Layout, all integers little-endian::

    b"LSK1"
    section  header (JSON)
    u32      replica count
    section  replica body, once per replica
    section  footer (JSON size summary)

A section is a u64 byte length followed by the bytes. Arrays inside a body
are a u64 element count followed by raw little-endian values.
"""
import logging
import struct
from pathlib import Path
from typing import List, Union

import numpy as np
from pydantic import ValidationError

from spectral_sketch.core.exceptions import SketchFormatError
from spectral_sketch.models.graph import WeightedGraph
from spectral_sketch.models.oriented import OrientedGraph
from spectral_sketch.models.sketch import (
    BasicClassSketch,
    BasicSketch,
    ImprovedSketch,
    S1ComponentSketch,
    S2ComponentSketch,
    S2StratumSketch,
    SketchBundle,
    SpectralSketch,
)
from spectral_sketch.operations.query import size_report
from spectral_sketch.schemas.params import Algorithm, SketchParams
from spectral_sketch.schemas.report import SKETCH_FORMAT_VERSION, S2BuildStats, SizeReport, SketchHeader

logger = logging.getLogger(__name__)

MAGIC = b"LSK1"
PathLike = Union[str, Path]


class _Writer:
    def __init__(self):
        self.parts: List[bytes] = []

    def u32(self, value: int) -> None:
        self.parts.append(struct.pack("<I", int(value)))

    def u64(self, value: int) -> None:
        self.parts.append(struct.pack("<Q", int(value)))

    def i64(self, value: int) -> None:
        self.parts.append(struct.pack("<q", int(value)))

    def f64(self, value: float) -> None:
        self.parts.append(struct.pack("<d", float(value)))

    def section(self, payload: bytes) -> None:
        self.u64(len(payload))
        self.parts.append(payload)

    def ints(self, arr) -> None:
        arr = np.ascontiguousarray(arr, dtype="<i8")
        self.u64(arr.size)
        self.parts.append(arr.tobytes())

    def floats(self, arr) -> None:
        arr = np.ascontiguousarray(arr, dtype="<f8")
        self.u64(arr.size)
        self.parts.append(arr.tobytes())

    def graph(self, g: WeightedGraph) -> None:
        self.ints(g.u)
        self.ints(g.v)
        self.floats(g.w)

    def arcs(self, og: OrientedGraph) -> None:
        self.ints(og.tails)
        self.ints(og.heads)
        self.floats(og.weights)

    def getvalue(self) -> bytes:
        return b"".join(self.parts)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def _take(self, size: int) -> bytes:
        if size < 0 or self.pos + size > len(self.data):
            raise SketchFormatError(f"Truncated sketch data at byte {self.pos}")
        chunk = self.data[self.pos:self.pos + size]
        self.pos += size
        return chunk

    def u32(self) -> int:
        return struct.unpack("<I", self._take(4))[0]

    def u64(self) -> int:
        return struct.unpack("<Q", self._take(8))[0]

    def i64(self) -> int:
        return struct.unpack("<q", self._take(8))[0]

    def f64(self) -> float:
        return struct.unpack("<d", self._take(8))[0]

    def section(self) -> bytes:
        return self._take(self.u64())

    def ints(self) -> np.ndarray:
        count = self.u64()
        return np.frombuffer(self._take(8 * count), dtype="<i8").astype(np.int64)

    def floats(self) -> np.ndarray:
        count = self.u64()
        return np.frombuffer(self._take(8 * count), dtype="<f8").astype(np.float64)

    def graph(self, n: int) -> WeightedGraph:
        u, v, w = self.ints(), self.ints(), self.floats()
        return WeightedGraph(n, u, v, w, coalesce=False)

    def arcs(self, n: int) -> OrientedGraph:
        tails, heads, weights = self.ints(), self.ints(), self.floats()
        return OrientedGraph(n, tails, heads, weights)

    def done(self) -> bool:
        return self.pos == len(self.data)


# ----------------------------------------------------------------------
# bodies
# ----------------------------------------------------------------------
def _encode_basic(sk: BasicSketch) -> bytes:
    out = _Writer()
    out.u64(sk.seed)
    out.f64(sk.eta)
    out.u64(sk.sparsified_edges)
    out.u32(len(sk.classes))
    for cls in sk.classes:
        out.i64(cls.index)
        out.f64(cls.gamma)
        out.u64(cls.splits)
        out.graph(cls.q)
        out.u32(len(cls.components))
        for c in cls.components:
            out.f64(c.gamma)
            out.u64(c.alpha)
            out.ints(c.vertices)
            out.floats(c.delta)
            out.floats(c.heavy_marginal)
            out.graph(c.light_edges)
            out.ints(c.sample_src)
            out.ints(c.sample_dst)
            out.ints(c.sample_count)
    return out.getvalue()


def _decode_basic(data: bytes, n: int, params: SketchParams) -> BasicSketch:
    r = _Reader(data)
    seed = r.u64()
    eta = r.f64()
    sparsified_edges = r.u64()
    classes = []
    for _ in range(r.u32()):
        index, gamma, splits = r.i64(), r.f64(), r.u64()
        q = r.graph(n)
        components = []
        for _ in range(r.u32()):
            components.append(S1ComponentSketch(
                gamma=r.f64(), alpha=r.u64(), vertices=r.ints(), delta=r.floats(),
                heavy_marginal=r.floats(), light_edges=r.graph(n),
                sample_src=r.ints(), sample_dst=r.ints(), sample_count=r.ints(),
            ))
        classes.append(BasicClassSketch(index=index, gamma=gamma, q=q, components=components, splits=splits))
    if not r.done():
        raise SketchFormatError("Trailing bytes in basic sketch body")
    return BasicSketch(n, params, seed, classes, eta=eta, sparsified_edges=sparsified_edges)


def _encode_improved(sk: ImprovedSketch) -> bytes:
    out = _Writer()
    out.u64(sk.seed)
    out.u32(len(sk.stored))
    for h in sk.stored:
        out.graph(h)
    out.u32(len(sk.s2_strata))
    for stratum in sk.s2_strata:
        out.i64(stratum.kappa)
        out.i64(stratum.weight_class)
        out.f64(stratum.gamma)
        out.graph(stratum.q)
        out.section(stratum.stats.model_dump_json().encode() if stratum.stats else b"")
        out.u32(len(stratum.components))
        for c in stratum.components:
            out.i64(c.kappa)
            out.u64(c.beta)
            out.f64(c.gamma)
            out.ints(c.vertices)
            out.floats(c.delta)
            out.floats(c.heavy_in)
            out.arcs(c.s_arcs)
            out.ints(c.sample_head)
            out.ints(c.sample_tail)
            out.ints(c.sample_count)
    return out.getvalue()


def _decode_improved(data: bytes, n: int, params: SketchParams) -> ImprovedSketch:
    r = _Reader(data)
    seed = r.u64()
    stored = [r.graph(n) for _ in range(r.u32())]
    strata = []
    for _ in range(r.u32()):
        kappa, weight_class, gamma = r.i64(), r.i64(), r.f64()
        q = r.graph(n)
        raw_stats = r.section()
        stats = S2BuildStats.model_validate_json(raw_stats) if raw_stats else None
        components = []
        for _ in range(r.u32()):
            components.append(S2ComponentSketch(
                kappa=r.i64(), beta=r.u64(), gamma=r.f64(), vertices=r.ints(), delta=r.floats(),
                heavy_in=r.floats(), s_arcs=r.arcs(n),
                sample_head=r.ints(), sample_tail=r.ints(), sample_count=r.ints(),
            ))
        strata.append(S2StratumSketch(kappa=kappa, weight_class=weight_class, gamma=gamma,
                                      q=q, components=components, stats=stats))
    if not r.done():
        raise SketchFormatError("Trailing bytes in improved sketch body")
    return ImprovedSketch(n, params, seed, stored, strata)


_ENCODERS = {Algorithm.BASIC: _encode_basic, Algorithm.IMPROVED: _encode_improved}
_DECODERS = {Algorithm.BASIC: _decode_basic, Algorithm.IMPROVED: _decode_improved}


# ----------------------------------------------------------------------
# files
# ----------------------------------------------------------------------
def header_for(bundle: SketchBundle) -> SketchHeader:
    p = bundle.params
    return SketchHeader(
        format_version=SKETCH_FORMAT_VERSION,
        algorithm=bundle.algorithm,
        eps=p.eps, delta=p.delta, c_alpha=p.c_alpha, c_beta=p.c_beta, c_med=p.c_med,
        sparsifier=p.sparsifier.value, tight=p.tight, h_override=p.h_override,
        seed=bundle.seed, n=bundle.n, replicas=len(bundle.replicas),
    )


def dumps(bundle: SketchBundle) -> bytes:
    out = _Writer()
    out.parts.append(MAGIC)
    out.section(header_for(bundle).model_dump_json().encode())
    out.u32(len(bundle.replicas))
    encode = _ENCODERS[bundle.algorithm]
    for replica in bundle.replicas:
        out.section(encode(replica))
    out.section(size_report(bundle).model_dump_json().encode())
    return out.getvalue()


def loads(data: bytes) -> SketchBundle:
    if data[:4] != MAGIC:
        raise SketchFormatError("Not a sketch file: bad magic bytes")
    r = _Reader(data)
    r.pos = 4
    try:
        header = SketchHeader.model_validate_json(r.section())
    except ValidationError as e:
        raise SketchFormatError(f"Invalid sketch header: {e}")
    if header.format_version != SKETCH_FORMAT_VERSION:
        raise SketchFormatError(f"Unsupported sketch format version {header.format_version}")
    params = SketchParams(
        eps=header.eps, delta=header.delta, c_alpha=header.c_alpha, c_beta=header.c_beta,
        c_med=header.c_med, sparsifier=header.sparsifier, tight=header.tight, h_override=header.h_override,
    )
    count = r.u32()
    if count != header.replicas:
        raise SketchFormatError(f"Header announces {header.replicas} replicas, body holds {count}")
    decode = _DECODERS[header.algorithm]
    replicas: List[SpectralSketch] = []
    for _ in range(count):
        replicas.append(decode(r.section(), header.n, params))
    SizeReport.model_validate_json(r.section())
    if not r.done():
        raise SketchFormatError("Trailing bytes after sketch footer")
    return SketchBundle(algorithm=header.algorithm, params=params, seed=header.seed,
                        n=header.n, replicas=replicas)


def read_footer(data: bytes) -> SizeReport:
    """Size summary stored at the end of a sketch file, without decoding the bodies."""
    if data[:4] != MAGIC:
        raise SketchFormatError("Not a sketch file: bad magic bytes")
    r = _Reader(data)
    r.pos = 4
    r.section()
    for _ in range(r.u32()):
        r.section()
    return SizeReport.model_validate_json(r.section())


def save_sketch(bundle: SketchBundle, path: PathLike) -> int:
    data = dumps(bundle)
    Path(path).write_bytes(data)
    logger.info(f"Wrote {len(data)} bytes to {path}")
    return len(data)


def load_sketch(path: PathLike) -> SketchBundle:
    return loads(Path(path).read_bytes())
