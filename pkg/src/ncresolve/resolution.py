"""Iteratively extend a minimal projective resolution of a module over
Gamma = R/<Omega> up to homological degree s_max and internal degree k, and
read off the Ext chart from the generator degrees.

Stage n holds the generators of P_n and the rows of the differential
d_{n-1}: P_n -> P_{n-1} (stage 0 has no differential).  Because every
differential is a minimal generating set of the previous kernel, dim
Ext^{s,t}(M, K) is the number of stage-s generators of degree t.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import (ConfigurationError, ContractViolation, FreeAlgebra,
                      Polynomial)
from .free_module import FreeModule, ModuleVector, normalize_vector
from .reduction import ReducerSet, TruncatedContext
from .syzygy import SyzygyProblem, apply_row, lift_syzygies, minimalize

TRIVIAL = "trivial-K"
COKERNEL = "cokernel"


@dataclass(frozen=True)
class ModulePresentation:
    """Either the trivial module K, or the cokernel of the given relation
    rows inside ⊕ Gamma·e_i (signature = the degrees |e_i|)."""
    kind: str
    signature: tuple[int, ...]
    rows: tuple[ModuleVector, ...]

    @classmethod
    def trivial_module(cls) -> "ModulePresentation":
        return cls(TRIVIAL, (0,), ())

    @classmethod
    def cokernel(cls, target: FreeModule, rows: Sequence[ModuleVector],
                 ctx: TruncatedContext) -> "ModulePresentation":
        reduced = []
        for r in rows:
            if r.parent != target:
                raise ConfigurationError("relation rows must live in the target module")
            if not r.is_homogeneous():
                raise ValueError("relation rows must be homogeneous")
            nr = normalize_vector(r, ctx)
            if not nr.is_zero():
                reduced.append(nr)
        return cls(COKERNEL, target.degrees, tuple(reduced))


@dataclass(frozen=True)
class ResolutionStage:
    degrees: tuple[int, ...]                 # generator degrees of P_n
    rows: tuple[ModuleVector, ...] | None    # d_{n-1} rows; None at stage 0

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(f"g{i}d{d}" for i, d in enumerate(self.degrees))


def _stage_ids(n: int, degrees: Sequence[int]) -> list[str]:
    return [f"s{n}g{i}d{d}" for i, d in enumerate(degrees)]


@dataclass(frozen=True)
class Resolution:
    ctx: TruncatedContext
    presentation: ModulePresentation
    stages: tuple[ResolutionStage, ...]

    @property
    def s_max(self) -> int:
        return len(self.stages) - 1

    def module_at(self, n: int) -> FreeModule:
        return FreeModule(self.ctx.algebra, self.stages[n].degrees)

    def differential(self, n: int) -> tuple[ModuleVector, ...]:
        """Rows of d_{n-1}: P_n -> P_{n-1} (n >= 1)."""
        return self.stages[n].rows

    def to_json_dict(self) -> dict:
        algebra = self.ctx.algebra
        stages = []
        for n, stage in enumerate(self.stages):
            gens = [{"id": gid, "degree": d}
                    for gid, d in zip(_stage_ids(n, stage.degrees), stage.degrees)]
            diff = None
            if stage.rows is not None:
                diff = [[str(c) for c in row.components()] for row in stage.rows]
            stages.append({"gens": gens, "diff": diff if diff is not None else []})
        return {
            "k": self.ctx.k,
            "field": algebra.field.p,
            "stages": stages,
            "algebra": {
                "order": algebra.order.kind,
                "generators": [{"name": n, "degree": d} for n, d in algebra.table],
                "relations": [str(g) for g in self.ctx.omega],
            },
            "module": {
                "kind": self.presentation.kind,
                "signature": list(self.presentation.signature),
                "rows": [str(r) for r in self.presentation.rows],
            },
        }


def resolution_from_json(data: dict) -> Resolution:
    spec = data["algebra"]
    algebra = FreeAlgebra([(g["name"], g["degree"]) for g in spec["generators"]],
                          p=int(data["field"]), order=spec["order"])
    omega = ReducerSet([algebra.parse(s) for s in spec["relations"]], algebra)
    ctx = TruncatedContext(omega, int(data["k"]))
    mod = data["module"]
    if mod["kind"] == TRIVIAL:
        presentation = ModulePresentation.trivial_module()
    else:
        target = FreeModule(algebra, mod["signature"])
        rows = tuple(target.parse(s) for s in mod["rows"])
        presentation = ModulePresentation(COKERNEL, target.degrees, rows)
    stages = []
    prev_degrees: tuple[int, ...] | None = None
    for n, st in enumerate(data["stages"]):
        degrees = tuple(g["degree"] for g in st["gens"])
        if n == 0:
            stages.append(ResolutionStage(degrees, None))
        else:
            target = FreeModule(algebra, prev_degrees)
            rows = tuple(
                target.from_components([algebra.parse(c) for c in comps])
                for comps in st["diff"])
            stages.append(ResolutionStage(degrees, rows))
        prev_degrees = degrees
    return Resolution(ctx, presentation, tuple(stages))


def _has_unit_term(row: ModuleVector) -> bool:
    return any(word == () for (_, word), _ in row.terms)


def initial_kernel(presentation: ModulePresentation,
                   ctx: TruncatedContext) -> tuple[ModuleVector, ...]:
    """Minimal generators for the kernel of P_0 -> M.

    For the trivial module this is the augmentation ideal I(Gamma), generated
    minimally by the indecomposables among the algebra generators; for a
    cokernel presentation it is the minimalized relation rows.
    """
    algebra = ctx.algebra
    if presentation.kind == TRIVIAL:
        if len(algebra.table) == 0:
            raise ConfigurationError("empty generator table cannot present the "
                                     "trivial module over a nontrivial algebra")
        p0 = FreeModule(algebra, presentation.signature)
        rows = []
        for i in range(len(algebra.table)):
            if algebra.table.degree(i) > ctx.k:
                continue
            row = normalize_vector(p0.embed(0, algebra.gen(i)), ctx)
            if not row.is_zero():
                rows.append(row)
        return minimalize(rows, ctx)
    return minimalize(presentation.rows, ctx)


def start_resolution(presentation: ModulePresentation,
                     ctx: TruncatedContext) -> Resolution:
    return Resolution(ctx, presentation,
                      (ResolutionStage(tuple(presentation.signature), None),))


def _sorted_rows(rows: Sequence[ModuleVector]) -> tuple[ModuleVector, ...]:
    return tuple(sorted(rows, key=lambda r: (r.degree(), r.parent.pot_key(r.lm),
                                             r.terms)))


def extend(res: Resolution) -> Resolution:
    """Append the next stage: generators of P_{n+1} mapping onto a minimal
    generating set of ker(d_{n-1}) (stages are never mutated, so charts for
    earlier stages are stable under further extension)."""
    ctx = res.ctx
    n = res.s_max
    if n == 0:
        rows = _sorted_rows(initial_kernel(res.presentation, ctx))
    else:
        prev_rows = res.stages[n].rows
        if not prev_rows:
            return Resolution(res.ctx, res.presentation,
                              res.stages + (ResolutionStage((), ()),))
        lifted = lift_syzygies(SyzygyProblem(tuple(prev_rows), ctx))
        for row in lifted.rows:
            if _has_unit_term(row):
                raise ContractViolation(
                    f"stage {n} rows were not minimal: syzygy {row} has a unit term")
        rows = _sorted_rows(minimalize(lifted.rows, ctx))
        for row in rows:
            if _has_unit_term(row):
                raise ContractViolation(f"minimalized syzygy {row} has a unit term")
            if not apply_row(row, prev_rows, ctx).is_zero():
                raise ContractViolation("new differential row does not compose to zero")
    degrees = tuple(r.degree() for r in rows)
    return Resolution(res.ctx, res.presentation,
                      res.stages + (ResolutionStage(degrees, rows),))


def resolve(presentation: ModulePresentation, ctx: TruncatedContext,
            s_max: int) -> Resolution:
    """Minimal resolution of M through homological degree s_max."""
    if s_max < 0:
        raise ConfigurationError("s_max must be >= 0")
    res = start_resolution(presentation, ctx)
    for _ in range(s_max):
        res = extend(res)
    return res


@dataclass(frozen=True)
class ExtChart:
    """Map (s, t) -> dim Ext^{s,t}(M, K); absent entries are zero."""
    entries: dict
    s_max: int
    t_max: int

    def get(self, s: int, t: int) -> int:
        return self.entries.get((s, t), 0)

    def items(self):
        return sorted(self.entries.items())

    def to_tsv(self) -> str:
        lines = ["#s\tt\tdim"]
        for (s, t), dim in self.items():
            lines.append(f"{s}\t{t}\t{dim}")
        return "\n".join(lines) + "\n"

    def to_svg(self, cell: int = 24, margin: int = 40) -> str:
        """Adams-style chart: a dot at (x, y) = (t - s, s) per unit of dim."""
        xs = [t - s for (s, t) in self.entries] or [0]
        ys = [s for (s, t) in self.entries] or [0]
        x_max, y_max = max(max(xs), self.t_max - self.s_max, 1), max(max(ys), self.s_max, 1)
        width = margin * 2 + cell * (x_max + 1)
        height = margin * 2 + cell * (y_max + 1)

        def px(x):
            return margin + cell // 2 + x * cell

        def py(y):
            return height - margin - cell // 2 - y * cell

        parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">',
            f'<rect width="{width}" height="{height}" fill="white"/>',
            f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin // 2}" '
            f'y2="{height - margin}" stroke="black"/>',
            f'<line x1="{margin}" y1="{height - margin}" x2="{margin}" '
            f'y2="{margin // 2}" stroke="black"/>',
        ]
        for x in range(0, x_max + 1):
            parts.append(f'<text x="{px(x)}" y="{height - margin + 14}" '
                         f'font-size="9" text-anchor="middle">{x}</text>')
        for y in range(0, y_max + 1):
            parts.append(f'<text x="{margin - 6}" y="{py(y) + 3}" '
                         f'font-size="9" text-anchor="end">{y}</text>')
        for (s, t), dim in self.items():
            x, y = px(t - s), py(s)
            parts.append(f'<circle cx="{x}" cy="{y}" r="3" fill="black"/>')
            if dim > 1:
                parts.append(f'<text x="{x + 5}" y="{y - 4}" font-size="9">{dim}</text>')
        parts.append("</svg>")
        return "\n".join(parts) + "\n"


def ext_chart(res: Resolution) -> ExtChart:
    """entries(s, t) = number of generators of P_s of degree t."""
    entries: dict = {}
    for s, stage in enumerate(res.stages):
        for t in stage.degrees:
            entries[(s, t)] = entries.get((s, t), 0) + 1
    return ExtChart(entries, res.s_max, res.ctx.k)
