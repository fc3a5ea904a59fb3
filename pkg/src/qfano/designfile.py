"""Tagged block collections and their text format.

::

    #qfd 1
    #field q=2^1 poly=0,1 alpha=1
    #ambient n=6
    D k=3 010011;001100;000001

Other lines starting with ``#`` are comments.  Blocks are emitted in
canonical RREF form, sorted by (tag order, basis).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .gf import FieldError, FieldSpec, parse_presentation
from .linalg import LinalgError, Subspace, canonicalize, vec_from_str

TAG_ORDER = ("S0", "A", "B", "C", "D")
FORMAT_VERSION = "1"


class DesignFormatError(ValueError):
    def __init__(self, lineno: int, reason: str):
        super().__init__("line %d: %s" % (lineno, reason))
        self.lineno = lineno
        self.reason = reason


@dataclass
class Design:
    """An ordered list of blocks of one dimension, each with a tag.

    Duplicates are representable (so verifiers can detect them); the
    construction never produces any.
    """

    field: FieldSpec
    n: int
    k: int
    blocks: list[Subspace] = field(default_factory=list)
    tags: list[str] = field(default_factory=list)

    def __post_init__(self):
        if len(self.blocks) != len(self.tags):
            raise ValueError("blocks and tags differ in length")
        for B in self.blocks:
            self._check(B)

    def _check(self, B: Subspace):
        if B.n != self.n or B.dim != self.k:
            raise LinalgError("block %s does not fit k=%d, n=%d" % (B, self.k, self.n))

    def add(self, B: Subspace, tag: str):
        self._check(B)
        self.blocks.append(B)
        self.tags.append(tag)

    def extend(self, blocks: Iterable[Subspace], tag: str):
        for B in blocks:
            self.add(B, tag)

    def __len__(self):
        return len(self.blocks)

    def __iter__(self) -> Iterator[tuple[Subspace, str]]:
        return iter(zip(self.blocks, self.tags))

    def tag_counts(self) -> dict[str, int]:
        c = Counter(self.tags)
        return {t: c[t] for t in sorted(c, key=_tag_key)}

    def with_tag(self, *tags: str) -> list[Subspace]:
        return [B for B, t in self if t in tags]

    def duplicates(self) -> list[Subspace]:
        c = Counter(self.blocks)
        return sorted(B for B, m in c.items() if m > 1)

    def sorted(self) -> "Design":
        pairs = sorted(self, key=lambda bt: (_tag_key(bt[1]), bt[0].basis))
        return Design(self.field, self.n, self.k, [b for b, _ in pairs], [t for _, t in pairs])

    def union(self, other: "Design") -> "Design":
        if (other.field.q, other.n, other.k) != (self.field.q, self.n, self.k):
            raise LinalgError("cannot merge designs with different parameters")
        return Design(self.field, self.n, self.k, self.blocks + other.blocks,
                      self.tags + other.tags)


def _tag_key(tag: str):
    try:
        return (TAG_ORDER.index(tag), tag)
    except ValueError:
        return (len(TAG_ORDER), tag)


def emit(D: Design) -> str:
    lines = ["#qfd " + FORMAT_VERSION, "#field " + D.field.presentation(), "#ambient n=%d" % D.n]
    for B, tag in D.sorted():
        lines.append("%s k=%d %s" % (tag, B.dim, B.to_str()))
    return "\n".join(lines) + "\n"


def parse(text: str) -> Design:
    F = None
    n = None
    version = None
    k = None
    blocks, tags = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, rest = line[1:].partition(" ")
            if key == "qfd":
                version = rest.strip()
                if version != FORMAT_VERSION:
                    raise DesignFormatError(lineno, "unsupported format version %r" % version)
            elif key == "field":
                try:
                    F = parse_presentation(rest)
                except FieldError as exc:
                    raise DesignFormatError(lineno, str(exc)) from None
            elif key == "ambient":
                if not rest.startswith("n="):
                    raise DesignFormatError(lineno, "expected '#ambient n=N'")
                try:
                    n = int(rest[2:])
                except ValueError:
                    raise DesignFormatError(lineno, "bad ambient dimension %r" % rest) from None
            continue
        if version is None or F is None or n is None:
            raise DesignFormatError(lineno, "block before complete header")
        parts = line.split()
        if len(parts) != 3 or not parts[1].startswith("k="):
            raise DesignFormatError(lineno, "expected 'TAG k=K v1;v2;...'")
        tag, kk, vecs = parts
        try:
            kk = int(kk[2:])
            gens = [vec_from_str(v) for v in vecs.split(";")]
        except ValueError as exc:
            raise DesignFormatError(lineno, str(exc)) from None
        if any(len(g) != n for g in gens):
            raise DesignFormatError(lineno, "vector length differs from ambient n=%d" % n)
        if any(c >= F.q for g in gens for c in g):
            raise DesignFormatError(lineno, "element code out of range for GF(%d)" % F.q)
        if len(gens) != kk:
            raise DesignFormatError(lineno, "k=%d but %d vectors given" % (kk, len(gens)))
        B = canonicalize(F, gens, n)
        if B.dim != kk:
            raise DesignFormatError(lineno, "vectors span dimension %d, not %d" % (B.dim, kk))
        if k is None:
            k = kk
        elif kk != k:
            raise DesignFormatError(lineno, "block dimension %d differs from %d" % (kk, k))
        blocks.append(B)
        tags.append(tag)
    if version is None or F is None or n is None:
        raise DesignFormatError(0, "missing header")
    return Design(F, n, k if k is not None else 0, blocks, tags)


def read_design(path) -> Design:
    with open(path) as f:
        return parse(f.read())


def write_design(path, D: Design):
    with open(path, "w") as f:
        f.write(emit(D))
