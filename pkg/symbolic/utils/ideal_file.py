"""
Plain-text ideal files.

    # twisted quadric
    ring x1 x2 x3
    order degrevlex
    gen x1*x2 - x3^2

``ring`` declares the ordered variables (spaces or commas), each ``gen``
line holds one generator, ``order`` is optional, ``#`` starts a comment.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path

from symbolic.exceptions import IdealFileError, PolynomialSyntaxError
from symbolic.groebner import Ideal
from symbolic.polyring import DEGREVLEX, LEX, PolyRing, format_poly

logger = logging.getLogger(__name__)

ORDERS = {"degrevlex": DEGREVLEX, "lex": LEX}


@dataclass
class IdealFile:
    ring: PolyRing
    generators: list = field(default_factory=list)
    order: str = "degrevlex"
    comments: list = field(default_factory=list)

    @classmethod
    def parse(cls, text):
        ring = None
        order = "degrevlex"
        sources = []
        comments = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if raw.strip().startswith("#"):
                comments.append(raw.strip()[1:].strip())
            if not line:
                continue
            keyword, _, rest = line.partition(" ")
            rest = rest.strip()
            offset = raw.index(rest) + 1 if rest else len(raw) + 1
            if keyword == "ring":
                if ring is not None:
                    raise IdealFileError("duplicate ring line", line=number, column=1)
                names = rest.replace(",", " ").split()
                if not names:
                    raise IdealFileError("ring line declares no variables", line=number, column=offset)
                try:
                    ring = PolyRing(tuple(names))
                except ValueError as exc:
                    raise IdealFileError(str(exc), line=number, column=offset)
            elif keyword == "order":
                if rest not in ORDERS:
                    raise IdealFileError(f"unknown order {rest!r}", line=number, column=offset)
                order = rest
            elif keyword == "gen":
                if ring is None:
                    raise IdealFileError("gen line before the ring line", line=number, column=1)
                if not rest:
                    raise IdealFileError("empty generator", line=number, column=offset)
                sources.append((number, offset, rest))
            else:
                raise IdealFileError(f"unknown directive {keyword!r}", line=number, column=1)

        if ring is None:
            raise IdealFileError("missing ring line", line=1, column=1)
        if not sources:
            raise IdealFileError("no generators", line=max(len(text.splitlines()), 1), column=1)

        ring = ring.with_order(ORDERS[order])
        generators = []
        for number, offset, source in sources:
            try:
                generators.append(ring.parse(source))
            except PolynomialSyntaxError as exc:
                column = offset + (exc.column or 1) - 1
                message = str(exc).split(": ", 1)[-1] if exc.column else str(exc)
                raise IdealFileError(message, line=number, column=column)
        return cls(ring, generators, order, comments)

    @classmethod
    def load(cls, path):
        path = Path(path)
        logger.debug(f"[IDEAL-FILE] reading {path}")
        return cls.parse(path.read_text())

    def to_ideal(self):
        return Ideal(self.ring, self.generators)

    def format(self):
        lines = [f"# {comment}" for comment in self.comments]
        lines.append("ring " + " ".join(self.ring.names))
        if self.order != "degrevlex":
            lines.append(f"order {self.order}")
        lines.extend(f"gen {format_poly(g)}" for g in self.generators)
        return "\n".join(lines) + "\n"

    def save(self, path):
        Path(path).write_text(self.format())


def load_ideal(path):
    return IdealFile.load(path).to_ideal()
