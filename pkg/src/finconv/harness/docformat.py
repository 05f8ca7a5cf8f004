"""Line-oriented instance documents.

    space S { points: p q; conv: p>q; }
    map f: S -> S { p=>q; q=>p; }
    group G { space: S; unit: p; table: p.p=p p.q=q q.p=q q.q=p; }
    cover C on S { {p} {q} }

Declarations may span lines; ``#`` starts a comment.  Diagonal convergence is
implicit and never written.  :func:`serialize` emits one declaration per line
in a canonical form, so ``serialize(parse(text)) == text`` for canonical text.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Hashable, Iterable

from ..groups import ConvergenceGroup, GroupError
from ..pasting import Cover
from ..spaces import PseudoSpace, SpaceError, SpaceMap

LABEL = r"[A-Za-z0-9_,()\[\]+\-*']+"
_LABEL_RE = re.compile(rf"^{LABEL}$")


class DocumentError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


def render_label(p: Hashable) -> str:
    """Labels render to tokens; tuples become ``(a,b)``, map points ``[u,v]``."""
    from ..exponentials import MapPoint
    if isinstance(p, MapPoint):
        return "[" + ",".join(render_label(x) for x in p) + "]"
    if isinstance(p, tuple):
        return "(" + ",".join(render_label(x) for x in p) + ")"
    s = str(p)
    if not _LABEL_RE.match(s):
        raise DocumentError(f"label {s!r} cannot be written in a document")
    return s


@dataclass
class Document:
    """Named declarations in source order."""

    spaces: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    groups: dict = field(default_factory=dict)
    covers: dict = field(default_factory=dict)
    order: list = field(default_factory=list)

    def add_space(self, name: str, space: PseudoSpace) -> "Document":
        self._claim(name, "space")
        self.spaces[name] = space
        return self

    def add_map(self, name: str, f: SpaceMap, dom: str, cod: str) -> "Document":
        self._claim(name, "map")
        self.maps[name] = (f, dom, cod)
        return self

    def add_group(self, name: str, G: ConvergenceGroup, space: str) -> "Document":
        self._claim(name, "group")
        self.groups[name] = (G, space)
        return self

    def add_cover(self, name: str, c: Cover, space: str) -> "Document":
        self._claim(name, "cover")
        self.covers[name] = (c, space)
        return self

    def _claim(self, name: str, kind: str) -> None:
        if any(name == n for _, n in self.order):
            raise DocumentError(f"duplicate declaration {name!r}")
        self.order.append((kind, name))

    def space(self, name: str) -> PseudoSpace:
        try:
            return self.spaces[name]
        except KeyError:
            raise DocumentError(f"no space named {name!r}") from None

    def map(self, name: str) -> SpaceMap:
        try:
            return self.maps[name][0]
        except KeyError:
            raise DocumentError(f"no map named {name!r}") from None

    def group(self, name: str) -> ConvergenceGroup:
        try:
            return self.groups[name][0]
        except KeyError:
            raise DocumentError(f"no group named {name!r}") from None

    def cover(self, name: str) -> Cover:
        try:
            return self.covers[name][0]
        except KeyError:
            raise DocumentError(f"no cover named {name!r}") from None


_ATOM_RE = re.compile(r"[A-Za-z0-9_+\-*']+")


def decode_label(text: str) -> Hashable:
    """Inverse of :func:`render_label`: atoms stay strings, ``(..)`` and ``[..]`` nest."""
    from ..exponentials import MapPoint

    def item(i: int) -> tuple[Hashable, int]:
        if i < len(text) and text[i] in "([":
            close = ")" if text[i] == "(" else "]"
            parts, i = [], i + 1
            if i < len(text) and text[i] == close:
                i += 1
            else:
                while True:
                    val, i = item(i)
                    parts.append(val)
                    if i < len(text) and text[i] == ",":
                        i += 1
                        continue
                    if i < len(text) and text[i] == close:
                        i += 1
                        break
                    raise DocumentError(f"malformed label {text!r}")
            return (MapPoint(parts) if close == "]" else tuple(parts)), i
        m = _ATOM_RE.match(text, i)
        if m is None:
            raise DocumentError(f"malformed label {text!r}")
        return m.group(), m.end()

    value, end = item(0)
    if end != len(text):
        raise DocumentError(f"malformed label {text!r}")
    return value


def document_of_space(name: str, space: PseudoSpace) -> Document:
    return Document().add_space(name, space)


# Serialization

def _space_line(name: str, s: PseudoSpace) -> str:
    pts = " ".join(render_label(p) for p in s.points)
    edges = " ".join(f"{render_label(a)}>{render_label(x)}" for a, x in s.edges())
    return f"space {name} {{ points: {pts}; conv: {edges}; }}"


def _map_line(name: str, f: SpaceMap, dom: str, cod: str) -> str:
    body = " ".join(f"{render_label(x)}=>{render_label(y)};" for x, y in zip(f.dom.points, f.images))
    return f"map {name}: {dom} -> {cod} {{ {body} }}"


def _group_line(name: str, G: ConvergenceGroup, space: str) -> str:
    pts = G.space.points
    table = " ".join(f"{render_label(a)}.{render_label(b)}={render_label(G.mult[a, b])}" for a in pts for b in pts)
    return f"group {name} {{ space: {space}; unit: {render_label(G.unit)}; table: {table}; }}"


def _cover_line(name: str, c: Cover, space: str) -> str:
    pieces = " ".join("{" + " ".join(render_label(p) for p in c.space.points if p in piece) + "}"
                      for piece in c.pieces)
    return f"cover {name} on {space} {{ {pieces} }}"


def serialize(doc: Document) -> str:
    lines = []
    for kind, name in doc.order:
        if kind == "space":
            lines.append(_space_line(name, doc.spaces[name]))
        elif kind == "map":
            lines.append(_map_line(name, *doc.maps[name]))
        elif kind == "group":
            lines.append(_group_line(name, *doc.groups[name]))
        else:
            lines.append(_cover_line(name, *doc.covers[name]))
    return "".join(line + "\n" for line in lines)


# Parsing

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<punct>[{};:])
  | (?P<word>[^\s{};:#]+)
""", re.VERBOSE)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise DocumentError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("ws", "comment"):
            toks.append(_Tok(kind, chunk, line, pos - line_start + 1))
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.doc = Document()

    def peek(self) -> _Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek() or (self.toks[-1] if self.toks else None)
        if tok is None:
            raise DocumentError(msg)
        raise DocumentError(msg, tok.line, tok.col)

    def next(self) -> _Tok:
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of input")
        self.i += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.next()
        if tok.text != text:
            self.error(f"expected {text!r}, found {tok.text!r}", tok)
        return tok

    def word(self) -> _Tok:
        tok = self.next()
        if tok.kind != "word":
            self.error(f"expected a name, found {tok.text!r}", tok)
        return tok

    def decode(self, text: str, tok: _Tok) -> Hashable:
        if not _LABEL_RE.match(text):
            self.error(f"malformed label {text!r}", tok)
        try:
            return decode_label(text)
        except DocumentError as exc:
            self.error(str(exc), tok)

    def words_until(self, stop: str) -> list[_Tok]:
        out = []
        while True:
            tok = self.peek()
            if tok is None:
                self.error(f"expected {stop!r}")
            if tok.text == stop:
                return out
            if tok.kind != "word":
                self.error(f"unexpected {tok.text!r}", tok)
            out.append(self.next())

    def parse(self) -> Document:
        while self.peek() is not None:
            kw = self.word()
            handler = {"space": self.space, "map": self.map, "group": self.group, "cover": self.cover}.get(kw.text)
            if handler is None:
                self.error(f"unknown declaration {kw.text!r}", kw)
            handler()
        return self.doc

    def _fields(self, allowed: Iterable[str]) -> dict[str, tuple[_Tok, list[_Tok]]]:
        allowed = set(allowed)
        fields: dict = {}
        self.expect("{")
        while self.peek() is not None and self.peek().text != "}":
            key = self.word()
            if key.text not in allowed:
                self.error(f"unknown key {key.text!r}", key)
            if key.text in fields:
                self.error(f"duplicate key {key.text!r}", key)
            self.expect(":")
            fields[key.text] = (key, self.words_until(";"))
            self.expect(";")
        self.expect("}")
        return fields

    def space(self) -> None:
        name = self.word()
        fields = self._fields(("points", "conv"))
        if "points" not in fields:
            self.error("a space needs a points list", name)
        points = []
        for tok in fields["points"][1]:
            p = self.decode(tok.text, tok)
            if p in points:
                self.error(f"duplicate point {tok.text!r}", tok)
            points.append(p)
        known = set(points)
        edges = []
        for tok in fields.get("conv", (None, []))[1]:
            parts = tok.text.split(">")
            if len(parts) != 2:
                self.error(f"malformed edge {tok.text!r}", tok)
            parts = [self.decode(p, tok) for p in parts]
            for p in parts:
                if p not in known:
                    self.error(f"edge uses unknown point {render_label(p)!r}", tok)
            edges.append(tuple(parts))
        self._declare(name, lambda: self.doc.add_space(name.text, PseudoSpace.from_edges(points, edges)))

    def map(self) -> None:
        name = self.word()
        self.expect(":")
        dom_tok = self.word()
        self.expect("->")
        cod_tok = self.word()
        dom, cod = self._space_ref(dom_tok), self._space_ref(cod_tok)
        self.expect("{")
        images: dict = {}
        while self.peek() is not None and self.peek().text != "}":
            tok = self.word()
            parts = tok.text.split("=>")
            if len(parts) != 2:
                self.error(f"malformed assignment {tok.text!r}", tok)
            x, y = (self.decode(p, tok) for p in parts)
            if x not in dom:
                self.error(f"{x!r} is not a point of {dom_tok.text}", tok)
            if y not in cod:
                self.error(f"{y!r} is not a point of {cod_tok.text}", tok)
            if x in images and images[x] != y:
                self.error(f"{x!r} is assigned twice", tok)
            images[x] = y
            self.expect(";")
        self.expect("}")
        missing = [p for p in dom.points if p not in images]
        if missing:
            self.error(f"map {name.text} is undefined at {missing!r}", name)
        f = SpaceMap.from_mapping(dom, cod, images)
        self._declare(name, lambda: self.doc.add_map(name.text, f, dom_tok.text, cod_tok.text))

    def group(self) -> None:
        name = self.word()
        fields = self._fields(("space", "unit", "table"))
        for key in ("space", "unit", "table"):
            if key not in fields:
                self.error(f"group needs a {key!r} field", name)
        sp_toks = fields["space"][1]
        if len(sp_toks) != 1:
            self.error("group space must be a single space name", fields["space"][0])
        sp_tok = sp_toks[0]
        space = self._space_ref(sp_tok)
        unit_toks = fields["unit"][1]
        unit = self.decode(unit_toks[0].text, unit_toks[0]) if len(unit_toks) == 1 else None
        if unit is None or unit not in space:
            self.error("unit must be one point of the space", fields["unit"][0])
        table = {}
        for tok in fields["table"][1]:
            m = re.fullmatch(rf"({LABEL})\.({LABEL})=({LABEL})", tok.text)
            vals = [self.decode(g, tok) for g in m.groups()] if m else []
            if not m or not all(v in space for v in vals):
                self.error(f"malformed table entry {tok.text!r}", tok)
            a, b, c = vals
            if (a, b) in table and table[a, b] != c:
                self.error(f"conflicting entries for {a}.{b}", tok)
            table[a, b] = c
        try:
            G = ConvergenceGroup.from_table(space, table, unit=unit)
        except GroupError as exc:
            self.error(f"not a group: {exc}", name)
        self._declare(name, lambda: self.doc.add_group(name.text, G, sp_tok.text))

    def cover(self) -> None:
        name = self.word()
        on = self.word()
        if on.text != "on":
            self.error("expected 'on'", on)
        sp_tok = self.word()
        space = self._space_ref(sp_tok)
        self.expect("{")
        pieces = []
        while self.peek() is not None and self.peek().text != "}":
            self.expect("{")
            piece = []
            for tok in self.words_until("}"):
                p = self.decode(tok.text, tok)
                if p not in space:
                    self.error(f"{tok.text!r} is not a point of {sp_tok.text}", tok)
                piece.append(p)
            self.expect("}")
            pieces.append(piece)
        self.expect("}")
        try:
            c = Cover(space, tuple(pieces))
        except SpaceError as exc:
            self.error(str(exc), name)
        self._declare(name, lambda: self.doc.add_cover(name.text, c, sp_tok.text))

    def _space_ref(self, tok: _Tok | None) -> PseudoSpace:
        if tok is None:
            self.error("expected a space name")
        if tok.text not in self.doc.spaces:
            self.error(f"unknown space {tok.text!r}", tok)
        return self.doc.spaces[tok.text]

    def _declare(self, tok: _Tok, add) -> None:
        try:
            add()
        except DocumentError as exc:
            self.error(str(exc), tok)


def parse(text: str) -> Document:
    return _Parser(text).parse()


def load(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
