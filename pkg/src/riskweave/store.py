"""Model documents (JSON, schema v1) and append-only session storage.

Rationals are serialized as "a/b" strings so judgments survive round
trips exactly.  Sessions live in a directory per session: an append-only
`log.jsonl` of judgments plus a `snapshot.json` with identity and the
derived-result cache.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path

import jsonschema

from riskweave import fixture
from riskweave.judgments import (
    ComparisonContext,
    ComparisonMatrix,
    Judgment,
    JudgmentError,
    format_value,
    matrix_from_judgments,
    parse_value,
)
from riskweave.fmea import FmeaError, FmeaItem
from riskweave.model import (
    DecisionNetwork,
    ModelError,
    build_network,
    comparison_contexts,
    serialize_network,
)

SCHEMA_VERSION = 1


class StoreError(ValueError):
    """Document or session persistence failure."""


MODEL_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "name", "network"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "name": {"type": "string", "minLength": 1},
        "description": {"type": "string"},
        "network": {
            "type": "object",
            "required": ["clusters"],
            "properties": {
                "name": {"type": "string"},
                "description": {"type": "string"},
                "clusters": {
                    "type": "array",
                    "minItems": 1,
                    "items": {
                        "type": "object",
                        "required": ["id", "kind", "elements"],
                        "properties": {
                            "id": {"type": "string", "minLength": 1},
                            "kind": {"enum": ["goal", "criteria", "alternatives"]},
                            "label": {"type": "string"},
                            "elements": {"type": "array", "minItems": 1},
                        },
                    },
                },
                "edges": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["source", "target", "level"],
                        "properties": {
                            "source": {"type": "string"},
                            "target": {"type": "string"},
                            "level": {"enum": ["cluster", "element"]},
                        },
                    },
                },
            },
        },
        "matrices": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["judgments"],
                "properties": {
                    "judgments": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["row", "col", "value"],
                            "properties": {
                                "row": {"type": "string"},
                                "col": {"type": "string"},
                                "value": {"type": ["string", "integer"]},
                            },
                        },
                    }
                },
            },
        },
        "fmea_items": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["cause", "severity", "occurrence", "detection"],
                "properties": {
                    "failure_mode": {"type": "string"},
                    "cause": {"type": "string"},
                    "severity": {"type": "integer"},
                    "occurrence": {"type": "integer"},
                    "detection": {"type": "integer"},
                },
            },
        },
        "alternative_normals": {"type": "object"},
        "manifest": {"type": "object"},
    },
}


@dataclass(frozen=True)
class LoadedModel:
    name: str
    description: str
    network: DecisionNetwork
    contexts: tuple[ComparisonContext, ...]
    judgments: dict[str, tuple[Judgment, ...]]
    matrices: dict[str, ComparisonMatrix]
    fmea_items: tuple[FmeaItem, ...]
    paper_normals: dict[str, float] | None
    manifest: dict
    warnings: tuple[str, ...] = ()

    def context(self, context_id: str) -> ComparisonContext:
        for c in self.contexts:
            if c.id == context_id:
                return c
        raise StoreError(f"unknown context {context_id}")


def load_model(document: dict) -> LoadedModel:
    """Validate a document into network, matrices, and FMEA items.

    Interpretation notes from the manifest surface as warnings.
    """
    try:
        jsonschema.validate(document, MODEL_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise StoreError(f"schema violation at {exc.json_path}: {exc.message}") from None

    try:
        network = build_network(document["network"])
    except ModelError as exc:
        raise StoreError(f"invalid network: {exc}") from None

    contexts = tuple(comparison_contexts(network))
    by_id = {c.id: c for c in contexts}

    judgments: dict[str, tuple[Judgment, ...]] = {}
    matrices: dict[str, ComparisonMatrix] = {}
    for ctx_id, spec in (document.get("matrices") or {}).items():
        if ctx_id not in by_id:
            raise StoreError(f"matrix for unknown context {ctx_id}")
        ctx = by_id[ctx_id]
        try:
            js = tuple(
                Judgment(ctx_id, j["row"], j["col"], parse_value(j["value"]))
                for j in spec["judgments"]
            )
            judgments[ctx_id] = js
            matrices[ctx_id] = matrix_from_judgments(ctx, js)
        except JudgmentError as exc:
            raise StoreError(f"matrix {ctx_id}: {exc}") from None

    cluster_labels = {c.id: c.label for c in network.clusters}
    items = []
    for row in document.get("fmea_items") or []:
        cause = row["cause"]
        cluster = network.cluster_of(cause)  # raises ModelError on unknown id
        try:
            items.append(
                FmeaItem(
                    failure_mode=row.get("failure_mode") or cluster_labels[cluster.id],
                    cause=cause,
                    severity=row["severity"],
                    occurrence=row["occurrence"],
                    detection=row["detection"],
                )
            )
        except FmeaError as exc:
            raise StoreError(f"fmea item {cause}: {exc}") from None

    normals = None
    alt = document.get("alternative_normals") or {}
    if "paper" in alt:
        normals = {k: float(v) for k, v in alt["paper"].items()}

    manifest = document.get("manifest") or {}
    warnings = tuple(manifest.get("notes", ()))

    return LoadedModel(
        name=document["name"],
        description=document.get("description", ""),
        network=network,
        contexts=contexts,
        judgments=judgments,
        matrices=matrices,
        fmea_items=tuple(items),
        paper_normals=normals,
        manifest=manifest,
        warnings=warnings,
    )


def dump_model(model: LoadedModel) -> dict:
    """Serialize back to a schema-v1 document (round-trip inverse of load)."""
    doc = {
        "schema_version": SCHEMA_VERSION,
        "name": model.name,
        "description": model.description,
        "network": serialize_network(model.network),
        "matrices": {
            ctx_id: {
                "judgments": [
                    {"row": j.row, "col": j.col, "value": format_value(j.value)}
                    for j in js
                ]
            }
            for ctx_id, js in model.judgments.items()
        },
        "fmea_items": [
            {
                "failure_mode": i.failure_mode,
                "cause": i.cause,
                "severity": i.severity,
                "occurrence": i.occurrence,
                "detection": i.detection,
            }
            for i in model.fmea_items
        ],
        "manifest": model.manifest,
    }
    if model.paper_normals is not None:
        doc["alternative_normals"] = {"paper": dict(model.paper_normals)}
    return doc


def load_model_file(path: str | Path) -> LoadedModel:
    with open(path, encoding="utf-8") as f:
        try:
            document = json.load(f)
        except json.JSONDecodeError as exc:
            raise StoreError(f"{path}: not valid JSON ({exc})") from None
    return load_model(document)


def write_model_file(document: dict, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(document, f, indent=2, sort_keys=False)
        f.write("\n")


def builtin_documents() -> dict[str, dict]:
    return {fixture.FIXTURE_NAME: fixture.paper_model_document()}


# --- sessions ---


@dataclass(frozen=True)
class LogEntry:
    seq: int
    timestamp: str
    context: str
    row: str
    col: str
    value: str  # exact rational as text

    def judgment(self) -> Judgment:
        return Judgment(self.context, self.row, self.col, parse_value(self.value))


@dataclass
class SessionRecord:
    session_id: str
    model: str
    created: str
    log: list[LogEntry] = field(default_factory=list)
    cache: dict | None = None  # {"log_hash": ..., "results": ...}

    def append(self, judgment: Judgment, timestamp: str | None = None) -> LogEntry:
        entry = LogEntry(
            seq=len(self.log) + 1,
            timestamp=timestamp or _now(),
            context=judgment.context,
            row=judgment.row,
            col=judgment.col,
            value=format_value(judgment.value),
        )
        self.log.append(entry)
        self.cache = None  # any new judgment invalidates derived results
        return entry

    def log_hash(self) -> str:
        return log_hash(self.log)

    def effective_judgments(self) -> dict[str, list[Judgment]]:
        """Replay the log: the latest entry per unordered pair wins."""
        latest: dict[tuple[str, str, str], Judgment] = {}
        for entry in self.log:
            j = entry.judgment()
            key = (j.context, *sorted((j.row, j.col)))
            latest[key] = j
        out: dict[str, list[Judgment]] = {}
        for j in latest.values():
            out.setdefault(j.context, []).append(j)
        return out


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def log_hash(log: list[LogEntry]) -> str:
    """Hash of the judgment content only; timestamps stay out so a replayed
    session hashes identically."""
    payload = json.dumps(
        [[e.context, e.row, e.col, e.value] for e in log], separators=(",", ":")
    )
    return hashlib.sha256(payload.encode()).hexdigest()


class SessionStore:
    """One directory per session under `root`; single writer per session."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        (self.root / "session").mkdir(parents=True, exist_ok=True)

    def _dir(self, session_id: str) -> Path:
        return self.root / "session" / session_id

    def list_ids(self) -> list[str]:
        return sorted(p.name for p in (self.root / "session").iterdir() if p.is_dir())

    def save(self, record: SessionRecord) -> None:
        d = self._dir(record.session_id)
        d.mkdir(parents=True, exist_ok=True)
        snapshot = {
            "schema_version": SCHEMA_VERSION,
            "session_id": record.session_id,
            "model": record.model,
            "created": record.created,
            "cache": record.cache,
        }
        (d / "snapshot.json").write_text(json.dumps(snapshot, indent=2) + "\n", encoding="utf-8")
        with open(d / "log.jsonl", "w", encoding="utf-8") as f:
            for e in record.log:
                f.write(
                    json.dumps(
                        {
                            "seq": e.seq,
                            "ts": e.timestamp,
                            "context": e.context,
                            "row": e.row,
                            "col": e.col,
                            "value": e.value,
                        }
                    )
                    + "\n"
                )

    def append_entry(self, record: SessionRecord, entry: LogEntry) -> None:
        """Append one judgment to the on-disk log and refresh the snapshot."""
        d = self._dir(record.session_id)
        with open(d / "log.jsonl", "a", encoding="utf-8") as f:
            f.write(
                json.dumps(
                    {
                        "seq": entry.seq,
                        "ts": entry.timestamp,
                        "context": entry.context,
                        "row": entry.row,
                        "col": entry.col,
                        "value": entry.value,
                    }
                )
                + "\n"
            )
        self._write_snapshot(record)

    def _write_snapshot(self, record: SessionRecord) -> None:
        d = self._dir(record.session_id)
        snapshot = {
            "schema_version": SCHEMA_VERSION,
            "session_id": record.session_id,
            "model": record.model,
            "created": record.created,
            "cache": record.cache,
        }
        (d / "snapshot.json").write_text(json.dumps(snapshot, indent=2) + "\n", encoding="utf-8")

    def update_cache(self, record: SessionRecord) -> None:
        self._write_snapshot(record)

    def load(self, session_id: str) -> SessionRecord:
        d = self._dir(session_id)
        snap_path = d / "snapshot.json"
        if not snap_path.exists():
            raise StoreError(f"session {session_id} not found")
        snapshot = json.loads(snap_path.read_text(encoding="utf-8"))
        log: list[LogEntry] = []
        log_path = d / "log.jsonl"
        if log_path.exists():
            with open(log_path, encoding="utf-8") as f:
                for lineno, line in enumerate(f, start=1):
                    if not line.strip():
                        continue
                    try:
                        raw = json.loads(line)
                        log.append(
                            LogEntry(
                                seq=raw["seq"],
                                timestamp=raw["ts"],
                                context=raw["context"],
                                row=raw["row"],
                                col=raw["col"],
                                value=raw["value"],
                            )
                        )
                    except (json.JSONDecodeError, KeyError):
                        last = f"entry {log[-1].seq}" if log else "no entries"
                        raise StoreError(
                            f"session {session_id}: corrupt log at line {lineno}; "
                            f"last replayable entry: {last}"
                        ) from None
        return SessionRecord(
            session_id=snapshot["session_id"],
            model=snapshot["model"],
            created=snapshot["created"],
            log=log,
            cache=snapshot.get("cache"),
        )
