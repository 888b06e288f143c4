"""Code files (JSON), solver and report output, and sweep CSV."""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import Optional, TextIO

from sidcodes.config import Config
from sidcodes.errors import CodeFileError, DimensionError
from sidcodes.graph import build_product_graph
from sidcodes.models import CodeSet, ConstructionPlan, Topology, VerificationReport, Vertex

CSV_COLUMNS = ['m', 'n', 'topology', 'lower', 'construction', 'upper', 'exact',
               'density_lower', 'density_construction', 'density_upper']


@dataclass
class CodeFile:
    m: int
    n: int
    topology: Topology
    codewords: list[Vertex]
    plan: Optional[dict] = None
    format_version: int = Config.FORMAT_VERSION

    @classmethod
    def from_code(cls, code: CodeSet, plan: Optional[ConstructionPlan] = None) -> CodeFile:
        graph = code.graph
        return cls(graph.m, graph.n, graph.topology, code.vertices(),
                   plan_to_dict(plan) if plan is not None else None)

    def to_code(self) -> CodeSet:
        graph = build_product_graph(self.m, self.n, self.topology, precompute=False)
        return CodeSet.from_vertices(graph, self.codewords)

    def to_dict(self) -> dict:
        data = {
            'format_version': self.format_version,
            'm': self.m,
            'n': self.n,
            'topology': self.topology.value,
            'codewords': [[v.row, v.col] for v in self.codewords],
        }
        if self.plan is not None:
            data.update(self.plan)
        return data


def plan_to_dict(plan: ConstructionPlan) -> dict:
    return {
        'family': plan.family.value,
        'k': plan.k,
        'parity_case': plan.parity_case.value,
        'residue_case': plan.residue_case.value,
        'fallback': plan.fallback,
        'parts': {name: [[v.row, v.col] for v in part] for name, part in plan.parts.items()},
        'predicted_size': plan.predicted_size,
    }


_PLAN_KEYS = ('family', 'k', 'parity_case', 'residue_case', 'fallback', 'parts', 'predicted_size')


def serialize(code_file: CodeFile) -> str:
    return json.dumps(code_file.to_dict(), indent=2) + '\n'


def _as_int(data: dict, key: str) -> int:
    value = data.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise CodeFileError(f'Field {key!r} must be an integer.')
    return value


def parse(text: str) -> CodeFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CodeFileError(f'Malformed JSON: {exc}') from exc
    if not isinstance(data, dict):
        raise CodeFileError('A code file must hold a JSON object.')

    version = _as_int(data, 'format_version')
    if version != Config.FORMAT_VERSION:
        raise CodeFileError(f'Unsupported format_version {version}.')
    m, n = _as_int(data, 'm'), _as_int(data, 'n')
    try:
        topology = Topology(data.get('topology'))
        build_product_graph(m, n, topology, precompute=False)
    except (ValueError, DimensionError) as exc:
        raise CodeFileError(f'Invalid graph description: {exc}') from exc

    raw = data.get('codewords')
    if not isinstance(raw, list):
        raise CodeFileError("Field 'codewords' must be a list.")
    codewords = []
    for entry in raw:
        if (not isinstance(entry, list) or len(entry) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in entry)):
            raise CodeFileError(f'Codeword {entry!r} is not an [i, j] pair.')
        row, col = entry
        if not (0 <= row < m and 0 <= col < n):
            raise CodeFileError(f'Codeword {entry!r} lies outside the {m}x{n} grid.')
        codewords.append(Vertex(row, col))
    if len(set(codewords)) != len(codewords):
        raise CodeFileError('Codewords contain duplicates.')
    codewords.sort(key=lambda v: v.row * n + v.col)

    plan = {key: data[key] for key in _PLAN_KEYS if key in data} or None
    return CodeFile(m, n, topology, codewords, plan, version)


def load_code_file(path: str) -> CodeFile:
    with open(path, encoding='utf-8') as handle:
        return parse(handle.read())


def dump_code_file(code_file: CodeFile, path: str):
    with open(path, 'w', encoding='utf-8') as handle:
        handle.write(serialize(code_file))


def report_to_dict(report: VerificationReport) -> dict:
    return {
        name: {
            'holds': result.holds,
            'witnesses': [[v.row, v.col] for v in result.witness],
            **({'advisory': True} if name in report.advisory else {}),
        }
        for name, result in report.conditions.items()
    }


def solve_result_to_dict(result) -> dict:
    graph = result.witness.graph
    return {
        'format_version': Config.FORMAT_VERSION,
        'm': graph.m,
        'n': graph.n,
        'topology': graph.topology.value,
        'objective': result.objective.value,
        'optimum': result.optimum,
        'certified': result.certified,
        'codewords': [[v.row, v.col] for v in result.witness],
        'nodes_explored': result.nodes_explored,
        'prunes_by_rule': dict(sorted(result.prunes_by_rule.items())),
    }


def _render(value, digits: int) -> str:
    if value is None:
        return ''
    if hasattr(value, 'denominator') and not isinstance(value, int):
        return format(float(value), f'.{digits}g')
    return str(getattr(value, 'value', value))


def write_sweep_csv(rows, stream: TextIO, digits: int = Config.CSV_DIGITS):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([_render(getattr(row, column), digits) for column in CSV_COLUMNS])

