"""Immutable permutations of {0, ..., n-1}.

A permutation is stored as its image sequence. Products are read left to
right, so ``(a * b)(x) == b(a(x))`` and ``x ^ (a*b) == (x ^ a) ^ b`` in the
usual exponential notation for right actions.
"""

from __future__ import annotations

import re
from functools import cached_property
from math import lcm

import numpy as np

from rank3kit.errors import GroupFileError


class Permutation:
    __slots__ = ("images", "__dict__")

    def __init__(self, images, check=True):
        images = tuple(int(x) for x in images)
        if check and sorted(images) != list(range(len(images))):
            raise ValueError("images do not form a bijection")
        if not images:
            raise ValueError("permutation of degree 0")
        self.images = images

    @classmethod
    def identity(cls, n):
        return cls(range(n), check=False)

    @classmethod
    def from_cycles(cls, n, cycles):
        """Build from 0-indexed cycles, e.g. ``from_cycles(4, [(0, 1, 2)])``."""
        img = list(range(n))
        seen = set()
        for cyc in cycles:
            for x in cyc:
                if not 0 <= x < n:
                    raise ValueError(f"point {x} out of range for degree {n}")
                if x in seen:
                    raise ValueError(f"repeated point {x}")
                seen.add(x)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(img, check=False)

    @classmethod
    def from_array(cls, arr):
        return cls(arr.tolist(), check=False)

    @property
    def degree(self):
        return len(self.images)

    @cached_property
    def array(self):
        a = np.array(self.images, dtype=np.intp)
        a.setflags(write=False)
        return a

    def __call__(self, x):
        return self.images[x]

    def __rxor__(self, x):
        # exponential notation: x ^ g
        return self.images[x]

    def __mul__(self, other):
        return compose(self, other)

    def __invert__(self):
        return self.inverse()

    def inverse(self):
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(inv, check=False)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, g):
        """Return ``g^-1 * self * g``."""
        return g.inverse() * self * g

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def is_identity(self):
        return all(i == x for i, x in enumerate(self.images))

    def support(self):
        return [i for i, x in enumerate(self.images) if i != x]

    def fixed_points(self):
        return [i for i, x in enumerate(self.images) if i == x]

    def cycles(self, singletons=False):
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            if len(cyc) > 1 or singletons:
                out.append(tuple(cyc))
        return out

    def cycle_type(self):
        return tuple(sorted((len(c) for c in self.cycles(singletons=True)), reverse=True))

    def order(self):
        return lcm(*(len(c) for c in self.cycles(singletons=True)))

    def sign(self):
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def to_cycle_string(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cyc)

    def to_image_string(self):
        return "img: " + " ".join(str(x + 1) for x in self.images)

    def __repr__(self):
        return f"Permutation({self.to_cycle_string()}, degree={self.degree})"

    def __str__(self):
        return self.to_cycle_string()


def compose(a, b):
    """The product ``a * b``: first ``a``, then ``b``."""
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} != {b.degree}")
    bi = b.images
    return Permutation([bi[x] for x in a.images], check=False)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text, degree):
    """Parse a 1-indexed permutation in cycle or ``img:`` notation."""
    text = text.strip()
    if text.startswith("img:"):
        fields = text[4:].replace(",", " ").split()
        try:
            pts = [int(t) - 1 for t in fields]
        except ValueError:
            raise GroupFileError(f"bad image line {text!r}") from None
        if len(pts) != degree:
            raise GroupFileError(f"image line has {len(pts)} entries, expected {degree}")
        for x in pts:
            if not 0 <= x < degree:
                raise GroupFileError(f"point {x + 1} out of range 1..{degree}")
        if len(set(pts)) != degree:
            raise GroupFileError("image line is not a bijection")
        return Permutation(pts, check=False)

    pos = 0
    cycles = []
    stripped = text.replace(" ", "")
    for m in _CYCLE_RE.finditer(stripped):
        if m.start() != pos:
            raise GroupFileError(f"cannot parse {text!r}")
        pos = m.end()
        body = m.group(1)
        if not body:
            continue
        try:
            cyc = [int(t) - 1 for t in body.split(",")]
        except ValueError:
            raise GroupFileError(f"bad cycle ({body})") from None
        cycles.append(cyc)
    if pos != len(stripped) or not stripped:
        raise GroupFileError(f"cannot parse {text!r}")
    seen = set()
    for cyc in cycles:
        for x in cyc:
            if not 0 <= x < degree:
                raise GroupFileError(f"point {x + 1} out of range 1..{degree}")
            if x in seen:
                raise GroupFileError(f"repeated point {x + 1}")
            seen.add(x)
    return Permutation.from_cycles(degree, [tuple(c) for c in cycles])
