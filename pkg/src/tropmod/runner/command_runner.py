"""
Command Runner
==============

Validated run configuration and the dispatcher that maps each command to
the module operations, renders the artifact and reports an exit status.

Every artifact is rendered deterministically: sorted keys, canonical
ordering, rational strings for exact lengths. Artifacts go to stdout unless
an output path is given; side outputs (``dot``, ``json_out``, ``csv``) are
always files.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import yaml
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..modules.comparison import coverage, specialization_order
from ..modules.contraction import betti_decomposition, contract
from ..modules.extended_cone import (
    ConeMode,
    Scalar,
    identification_kinds,
    product_turns,
    same_class,
    separation_turns,
    stratum_of,
)
from ..modules.generation import enumerate_regular, enumerate_stable_weighted
from ..modules.graph_core import WeightedGraph, genus
from ..modules.isomorphism import automorphisms, canonical_form
from ..modules.moduli_strata import short_key, strata_of
from ..modules.serialization import dumps, emit_graph, emit_point, format_length, load_graph, load_point, parse_graph
from ..reports.census_report import CensusPdfReport, collect_census, render_markdown
from ..reports.formats import (
    aut_document,
    census_document,
    coverage_csv,
    stratification_dot,
    strata_document,
    strata_dot,
)
from ..utils.errors import InputFormatError, TropmodError
from ..utils.parallel import WorkerPool
from ..utils.result_store import ResultStore
from ..utils.settings import Settings


class Command(str, Enum):
    GEN_REGULAR = "gen-regular"
    GEN_STABLE = "gen-stable"
    CONTRACT = "contract"
    AUT = "aut"
    STRATA = "strata"
    CLASSIFY_POINT = "classify-point"
    FIBER = "fiber"
    DIST = "dist"
    COMPARE = "compare"
    REPORT = "report"


class OutputFormat(str, Enum):
    JSON = "json"
    DOT = "dot"
    CSV = "csv"
    MD = "md"
    PDF = "pdf"


CENSUS_COMMANDS = {Command.GEN_REGULAR, Command.GEN_STABLE, Command.COMPARE, Command.REPORT}
GRAPH_COMMANDS = {Command.CONTRACT, Command.AUT, Command.STRATA}
POINT_COMMANDS = {Command.CLASSIFY_POINT, Command.FIBER}

ALLOWED_FORMATS = {
    Command.STRATA: {OutputFormat.JSON, OutputFormat.DOT},
    Command.COMPARE: {OutputFormat.JSON, OutputFormat.CSV, OutputFormat.DOT},
    Command.REPORT: {OutputFormat.MD, OutputFormat.PDF},
}


class RunConfig(BaseModel):
    """One invocation: a command, its inputs and how to render the result."""
    model_config = ConfigDict(extra="forbid")

    command: Command
    graph: Optional[str] = None
    point: Optional[str] = None
    p: Optional[str] = None
    q: Optional[str] = None
    edges: List[str] = Field(default_factory=list)
    genus: Optional[int] = Field(default=None, ge=0)
    leaves: Optional[int] = Field(default=None, ge=0)
    format: Optional[OutputFormat] = None
    float_mode: bool = False
    tolerance: Optional[float] = Field(default=None, gt=0)
    workers: Optional[int] = Field(default=None, ge=1)
    output: Optional[Path] = None
    dot: Optional[Path] = None
    json_out: Optional[Path] = None
    csv: Optional[Path] = None
    store: bool = False

    @field_validator('edges', mode='before')
    @classmethod
    def split_edges(cls, v: Any) -> Any:
        if isinstance(v, str):
            return [e.strip() for e in v.split(",") if e.strip()]
        return v

    @model_validator(mode='after')
    def check_command_inputs(self) -> "RunConfig":
        if self.tolerance is not None and not self.float_mode:
            raise ValueError("tolerance is only meaningful in float mode")
        if self.command in CENSUS_COMMANDS:
            if self.genus is None or self.leaves is None:
                raise ValueError(f"{self.command.value} needs genus and leaves")
            if 2 - 2 * self.genus - self.leaves >= 0:
                raise ValueError(f"(g, n) = ({self.genus}, {self.leaves}) is not in the stable range 2 - 2g - n < 0")
        if self.command in GRAPH_COMMANDS and not self.graph:
            raise ValueError(f"{self.command.value} needs a graph")
        if self.command in POINT_COMMANDS and not self.point:
            raise ValueError(f"{self.command.value} needs a point")
        if self.command == Command.DIST and not (self.p and self.q):
            raise ValueError("dist needs two points, p and q")
        allowed = ALLOWED_FORMATS.get(self.command, {OutputFormat.JSON})
        if self.resolved_format not in allowed:
            raise ValueError(f"{self.command.value} cannot render format {self.resolved_format.value}; "
                             f"choose from {sorted(f.value for f in allowed)}")
        return self

    @property
    def resolved_format(self) -> OutputFormat:
        if self.format is not None:
            return self.format
        return OutputFormat.MD if self.command == Command.REPORT else OutputFormat.JSON

    @classmethod
    def from_sources(cls, values: Dict[str, Any], config_file: Optional[Path] = None) -> "RunConfig":
        """
        Merge a YAML config file with explicit values (explicit values win) and validate.

        Raises:
            InputFormatError: unreadable YAML or an invalid configuration
        """
        merged: Dict[str, Any] = {}
        if config_file is not None:
            try:
                loaded = yaml.safe_load(Path(config_file).read_text(encoding="utf-8")) or {}
            except FileNotFoundError:
                raise InputFormatError(f"config file not found: {config_file}")
            except yaml.YAMLError as exc:
                raise InputFormatError(f"{config_file}: invalid YAML: {exc}")
            if not isinstance(loaded, dict):
                raise InputFormatError(f"{config_file}: expected a mapping at the top level")
            merged.update(loaded)
        merged.update({k: v for k, v in values.items() if v is not None})
        try:
            return cls.model_validate(merged)
        except ValidationError as exc:
            first = exc.errors()[0]
            where = ".".join(str(part) for part in first.get("loc", ()))
            message = str(first.get("msg")).removeprefix("Value error, ")
            raise InputFormatError(f"invalid configuration: {where + ': ' if where else ''}{message}")


@dataclass
class RunOutcome:
    """Exit status, the stdout artifact and the files written."""
    exit_code: int
    output: str = ""
    artifacts: List[Path] = field(default_factory=list)
    error: Optional[str] = None


def _turns_document(turns: Scalar) -> Dict[str, Any]:
    return {"turns": format_length(turns), "radians": 2 * math.pi * float(turns)}


class CommandRunner:
    """
    Dispatches a RunConfig to the module operations.

    Desk-scale bounds, tolerance, data directory and the default worker
    count come from ``Settings``.
    """

    def __init__(self, settings: Optional[Settings] = None):
        """
        Initialize the runner.

        Args:
            settings: Runtime settings; defaults apply when omitted
        """
        self.settings = settings or Settings()
        self.store = ResultStore(self.settings.data_dir)
        self.handlers: Dict[Command, Callable[[RunConfig], str]] = {
            Command.GEN_REGULAR: self._gen_regular,
            Command.GEN_STABLE: self._gen_stable,
            Command.CONTRACT: self._contract,
            Command.AUT: self._aut,
            Command.STRATA: self._strata,
            Command.CLASSIFY_POINT: self._classify_point,
            Command.FIBER: self._fiber,
            Command.DIST: self._dist,
            Command.COMPARE: self._compare,
            Command.REPORT: self._report,
        }
        self._artifacts: List[Path] = []

    def run(self, config: RunConfig) -> RunOutcome:
        """
        Execute one command.

        Returns:
            RunOutcome with exit code 0 on success, 1 on user error and 2 on
            a failed internal invariant
        """
        self._artifacts = []
        logger.info(f"Running {config.command.value}")
        try:
            output = self.handlers[config.command](config)
        except TropmodError as e:
            if e.exit_code == 2:
                logger.error(f"Integrity violation in {config.command.value}: {e.one_line()}")
            return RunOutcome(exit_code=e.exit_code, artifacts=list(self._artifacts), error=e.one_line())

        if config.output is not None and output:
            self._write(config.output, output)
            output = ""
        return RunOutcome(exit_code=0, output=output, artifacts=list(self._artifacts))

    # -- helpers --------------------------------------------------------------

    def _pool(self, config: RunConfig) -> WorkerPool:
        return WorkerPool(config.workers or self.settings.workers)

    def _tolerance(self, config: RunConfig) -> float:
        return config.tolerance if config.tolerance is not None else self.settings.tolerance

    def _write(self, path: Path, text: str) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        self._artifacts.append(path)
        logger.info(f"Wrote {path}")

    # -- commands -------------------------------------------------------------

    def _census(self, kind: str, config: RunConfig, compute: Callable[[], List[WeightedGraph]]) -> str:
        """Census document for one (g, n); with ``--store`` a stored census is reused, otherwise saved."""
        name = self.store.census_name(config.genus, config.leaves)
        stored = self.store.get(kind, name) if config.store else None
        if stored is not None:
            logger.info(f"Using stored {kind} census {name} ({stored['count']} graph(s))")
            graphs = [parse_graph(doc) for doc in stored["graphs"]]
        else:
            graphs = compute()
        doc = census_document(kind, config.genus, config.leaves, graphs)
        if config.store and stored is None:
            self._artifacts.append(self.store.save_census(kind, config.genus, config.leaves, doc["graphs"]))
        return dumps(doc)

    def _gen_regular(self, config: RunConfig) -> str:
        return self._census("regular", config,
                            lambda: enumerate_regular(config.genus, config.leaves, self.settings.max_generation_edges))

    def _gen_stable(self, config: RunConfig) -> str:
        return self._census("stable", config,
                            lambda: enumerate_stable_weighted(config.genus, config.leaves,
                                                              self.settings.max_generation_edges,
                                                              pool=self._pool(config)))

    def _contract(self, config: RunConfig) -> str:
        g = load_graph(config.graph)
        c = contract(g, config.edges)
        betti = betti_decomposition(c)
        return dumps({
            "contracted": sorted(c.q),
            "graph": emit_graph(c.result),
            "witness": {
                "vertexMap": dict(sorted(c.vertex_map.items())),
                "edgeMap": dict(sorted(c.edge_map.items())),
                "perVertexBetti": dict(sorted(betti.per_vertex.items())),
            },
        })

    def _aut(self, config: RunConfig) -> str:
        return dumps(aut_document(automorphisms(load_graph(config.graph))))

    def _strata(self, config: RunConfig) -> str:
        g = load_graph(config.graph)
        poset = strata_of(g, self.settings.max_strata_edges, pool=self._pool(config))
        doc = strata_document(poset)
        if config.dot is not None:
            self._write(config.dot, strata_dot(poset))
        if config.json_out is not None:
            self._write(config.json_out, dumps(doc))
        if config.store:
            representatives = [s["representative"] for s in doc["strata"]]
            self._artifacts.append(self.store.save_strata(short_key(canonical_form(g)), genus(g), g.n_leaves,
                                                          representatives, doc["hasse"]))
        if config.resolved_format == OutputFormat.DOT:
            return strata_dot(poset)
        return dumps(doc)

    def _classify_point(self, config: RunConfig) -> str:
        p = load_point(config.point, float_mode=config.float_mode)
        location = stratum_of(p)
        return dumps({
            "zeroSet": sorted(location.q),
            "dimension": len(location.graph.edges),
            "stratumKey": short_key(canonical_form(location.graph)),
            "stratum": emit_graph(location.graph),
            "lengths": {e: format_length(x) for e, x in sorted(location.lengths.items())},
        })

    def _fiber(self, config: RunConfig) -> str:
        p = load_point(config.point, float_mode=config.float_mode)
        kinds = identification_kinds(p, self._tolerance(config))
        points = sorted(kinds.by_automorphism + kinds.by_face_isometry, key=lambda pt: pt.signature())
        return dumps({
            "size": len(points),
            "byAutomorphism": len(kinds.by_automorphism),
            "byFaceIsometry": len(kinds.by_face_isometry),
            "points": [emit_point(pt)["coords"] for pt in points],
        })

    def _dist(self, config: RunConfig) -> str:
        p = load_point(config.p, float_mode=config.float_mode)
        q = load_point(config.q, float_mode=config.float_mode)
        doc: Dict[str, Any] = {"product": _turns_document(product_turns(p, q))}
        if p.mode == ConeMode.COMPACT and q.mode == ConeMode.COMPACT:
            tolerance = self._tolerance(config)
            doc["separation"] = _turns_document(separation_turns(p, q, tolerance))
            doc["sameClass"] = same_class(p, q, tolerance)
        return dumps(doc)

    def _compare(self, config: RunConfig) -> str:
        report = coverage(config.genus, config.leaves, self.settings.max_generation_edges, pool=self._pool(config),
                          max_strata_edges=self.settings.max_strata_edges)
        dot = "".join(stratification_dot(result.smap) for result in report.bases)
        if config.csv is not None:
            self._write(config.csv, coverage_csv(report))
        if config.dot is not None:
            self._write(config.dot, dot)
        if config.resolved_format == OutputFormat.CSV:
            return coverage_csv(report)
        if config.resolved_format == OutputFormat.DOT:
            return dot

        order = specialization_order(config.genus, config.leaves, self.settings.max_generation_edges,
                                     classes=list(report.stable_classes.values()))
        classes = [short_key(canonical_form(c)) for c in order.classes]
        return dumps({
            "genus": report.genus,
            "leaves": report.leaves,
            "stableClasses": [short_key(k) for k in report.stable_classes],
            "specialization": [[classes[i], classes[j]] for i, j in order.hasse],
            "bases": [
                {
                    "base": short_key(result.base_key),
                    "hits": [short_key(k) for k in result.hits],
                    "misses": [short_key(k) for k in result.misses],
                    "collisions": [list(pair) for pair in result.collisions],
                    "wellDefined": not result.smap.violations,
                    "strata": [
                        {
                            "stratum": result.poset.strata[image.stratum].digest,
                            "nodalClass": short_key(image.key),
                            "normalization": [list(piece) for piece in image.nodal_type.normalization()],
                        }
                        for image in result.smap.images
                    ],
                }
                for result in report.bases
            ],
            "union": len(report.union),
            "unionComplete": report.union_complete,
        })

    def _report(self, config: RunConfig) -> str:
        summary = collect_census(config.genus, config.leaves, self.settings.max_generation_edges,
                                 pool=self._pool(config), max_strata_edges=self.settings.max_strata_edges)
        if config.resolved_format == OutputFormat.PDF:
            output_dir = config.output.parent if config.output is not None else Path("reports")
            pdf = CensusPdfReport(summary, output_dir=str(output_dir))
            path = Path(pdf.generate_complete_report())
            if config.output is not None and path != config.output:
                path = path.replace(config.output)
            self._artifacts.append(path)
            return ""
        return render_markdown(summary)
