"""Graph dataset readers, writers and a seeded random-graph generator.

Three on-disk formats are supported:

``tud``
    TUDataset flat files in a directory: ``DS_A.txt`` (comma separated,
    1-based node pairs), ``DS_graph_indicator.txt`` (1-based graph id per
    node) and optionally ``DS_graph_labels.txt``. Node/edge attribute
    files are ignored.
``edgelist``
    One graph per file: a header ``n <count>`` then ``i j`` lines, 0-based.
    A dataset is a directory of such files read in name order.
``json``
    ``{"name": ..., "graphs": [{"n": ..., "edges": [[i, j], ...], "label": ...}]}``
    with ``i < j`` and edges sorted lexicographically.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import InconsistentIndicator, MalformedFile, MissingFile
from .graph import Graph

FORMATS = ("tud", "edgelist", "json")


@dataclass
class Dataset:
    name: str
    graphs: list[Graph] = field(default_factory=list)
    class_count: int = 0

    def __post_init__(self):
        labels = [g.label for g in self.graphs if g.label is not None]
        if labels:
            if min(labels) < 0:
                raise ValueError("graph labels must be non-negative")
            self.class_count = max(self.class_count, max(labels) + 1)

    def __len__(self):
        return len(self.graphs)

    def __iter__(self):
        return iter(self.graphs)

    def __getitem__(self, idx):
        return self.graphs[idx]


def _read_int_lines(path: Path, sep=None):
    rows = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line:
                continue
            try:
                rows.append((lineno, [int(tok) for tok in line.split(sep)]))
            except ValueError:
                raise MalformedFile(f"cannot parse {line!r}", path, lineno) from None
    return rows


def _tud_prefix(directory: Path) -> str:
    hits = sorted(directory.glob("*_A.txt"))
    if not hits:
        raise MissingFile(f"no *_A.txt file in {directory}")
    if len(hits) > 1:
        raise MalformedFile(f"several *_A.txt files in {directory}")
    return hits[0].name[: -len("_A.txt")]


def read_tudataset(directory) -> Dataset:
    """Read a TUDataset directory; nodes are re-indexed 0-based per graph.

    Both directions of an edge may be listed; they collapse into one
    undirected edge. Non-negative labels are kept as is; a label set with
    negative values (e.g. ``-1/1``) is mapped to ranks of its sorted
    distinct values.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise MissingFile(f"{directory} is not a directory")
    ds = _tud_prefix(directory)
    a_path = directory / f"{ds}_A.txt"
    ind_path = directory / f"{ds}_graph_indicator.txt"
    lab_path = directory / f"{ds}_graph_labels.txt"
    if not ind_path.exists():
        raise MissingFile(f"missing {ind_path}")

    indicator = []
    for lineno, vals in _read_int_lines(ind_path):
        if len(vals) != 1 or vals[0] < 1:
            raise MalformedFile("expected one positive graph id", ind_path, lineno)
        indicator.append(vals[0])
    n_graphs = max(indicator, default=0)
    local = []
    counts = [0] * (n_graphs + 1)
    for gid in indicator:
        local.append(counts[gid])
        counts[gid] += 1
    if any(c == 0 for c in counts[1:]):
        raise MalformedFile("graph ids in the indicator are not contiguous", ind_path)

    edges: list[set] = [set() for _ in range(n_graphs + 1)]
    for lineno, vals in _read_int_lines(a_path, sep=","):
        if len(vals) != 2:
            raise MalformedFile("expected two node ids", a_path, lineno)
        u, v = vals
        if not (1 <= u <= len(indicator) and 1 <= v <= len(indicator)):
            raise MalformedFile(f"node id out of range in ({u}, {v})", a_path, lineno)
        if u == v:
            raise MalformedFile(f"self-loop on node {u}", a_path, lineno)
        gu, gv = indicator[u - 1], indicator[v - 1]
        if gu != gv:
            raise InconsistentIndicator(
                f"edge ({u}, {v}) joins graphs {gu} and {gv}", a_path, lineno
            )
        i, j = local[u - 1], local[v - 1]
        edges[gu].add((min(i, j), max(i, j)))

    labels = [None] * n_graphs
    if lab_path.exists():
        raw = []
        for lineno, vals in _read_int_lines(lab_path):
            if len(vals) != 1:
                raise MalformedFile("expected one label per line", lab_path, lineno)
            raw.append(vals[0])
        if len(raw) != n_graphs:
            raise MalformedFile(f"{len(raw)} labels for {n_graphs} graphs", lab_path)
        distinct = sorted(set(raw))
        if distinct and distinct[0] < 0:
            rank = {v: k for k, v in enumerate(distinct)}
            raw = [rank[v] for v in raw]
        labels = raw

    graphs = [Graph(counts[g], edges[g], labels[g - 1]) for g in range(1, n_graphs + 1)]
    return Dataset(ds, graphs)


def write_tudataset(dataset: Dataset, directory) -> None:
    """Write ``dataset`` as TUDataset flat files (both edge directions listed)."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    ds = dataset.name
    labels = [g.label for g in dataset.graphs]
    if any(v is None for v in labels) and any(v is not None for v in labels):
        raise ValueError("either every graph carries a label or none does")

    a_lines, ind_lines = [], []
    offset = 0
    for gid, g in enumerate(dataset.graphs, 1):
        ind_lines.extend([f"{gid}\n"] * g.n)
        for i, j in g.sorted_edges():
            a_lines.append(f"{i + offset + 1}, {j + offset + 1}\n")
            a_lines.append(f"{j + offset + 1}, {i + offset + 1}\n")
        offset += g.n
    (directory / f"{ds}_A.txt").write_text("".join(a_lines))
    (directory / f"{ds}_graph_indicator.txt").write_text("".join(ind_lines))
    lab_path = directory / f"{ds}_graph_labels.txt"
    if labels and labels[0] is not None:
        lab_path.write_text("".join(f"{v}\n" for v in labels))
    elif lab_path.exists():
        lab_path.unlink()


def read_edge_list(path) -> Graph:
    path = Path(path)
    if not path.is_file():
        raise MissingFile(f"missing {path}")
    n = None
    edges = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            toks = raw.split()
            if not toks:
                continue
            if n is None:
                if len(toks) != 2 or toks[0] != "n":
                    raise MalformedFile("expected header 'n <count>'", path, lineno)
                try:
                    n = int(toks[1])
                except ValueError:
                    raise MalformedFile(f"bad node count {toks[1]!r}", path, lineno) from None
                if n < 0:
                    raise MalformedFile("negative node count", path, lineno)
                continue
            if len(toks) != 2:
                raise MalformedFile(f"expected 'i j', got {raw.strip()!r}", path, lineno)
            try:
                i, j = int(toks[0]), int(toks[1])
            except ValueError:
                raise MalformedFile(f"cannot parse {raw.strip()!r}", path, lineno) from None
            if i == j:
                raise MalformedFile(f"self-loop on node {i}", path, lineno)
            if not (0 <= i < n and 0 <= j < n):
                raise MalformedFile(f"node out of range in ({i}, {j})", path, lineno)
            edges.append((i, j))
    if n is None:
        raise MalformedFile("empty file", path)
    return Graph(n, edges)


def write_edge_list(g: Graph, path) -> None:
    lines = [f"n {g.n}\n"] + [f"{i} {j}\n" for i, j in g.sorted_edges()]
    Path(path).write_text("".join(lines))


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.sorted_edges()], "label": g.label}


def dataset_to_json(dataset: Dataset) -> dict:
    return {"name": dataset.name, "graphs": [graph_to_json(g) for g in dataset.graphs]}


def dataset_from_json(obj: dict) -> Dataset:
    try:
        graphs = [Graph(d["n"], map(tuple, d["edges"]), d.get("label")) for d in obj["graphs"]]
        return Dataset(obj["name"], graphs)
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedFile(f"invalid dataset JSON: {exc}") from None


def write_json(dataset: Dataset, path) -> None:
    Path(path).write_text(json.dumps(dataset_to_json(dataset), separators=(",", ":")) + "\n")


def read_json(path) -> Dataset:
    path = Path(path)
    if not path.is_file():
        raise MissingFile(f"missing {path}")
    try:
        obj = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise MalformedFile(exc.msg, path, exc.lineno) from None
    return dataset_from_json(obj)


def read_dataset(path, fmt: str) -> Dataset:
    path = Path(path)
    if fmt == "tud":
        return read_tudataset(path)
    if fmt == "json":
        return read_json(path)
    if fmt == "edgelist":
        if path.is_file():
            return Dataset(path.stem, [read_edge_list(path)])
        if not path.is_dir():
            raise MissingFile(f"missing {path}")
        files = sorted(path.glob("*.txt"))
        return Dataset(path.name, [read_edge_list(f) for f in files])
    raise ValueError(f"unknown format {fmt!r}")


def write_dataset(dataset: Dataset, path, fmt: str) -> None:
    path = Path(path)
    if fmt == "tud":
        write_tudataset(dataset, path)
    elif fmt == "json":
        path.parent.mkdir(parents=True, exist_ok=True)
        write_json(dataset, path)
    elif fmt == "edgelist":
        path.mkdir(parents=True, exist_ok=True)
        width = max(5, len(str(len(dataset))))
        for k, g in enumerate(dataset.graphs):
            write_edge_list(g, path / f"graph_{k:0{width}d}.txt")
    else:
        raise ValueError(f"unknown format {fmt!r}")


def random_graph(n: int, p: float, seed=None) -> Graph:
    """Erdos-Renyi ``G(n, p)``; each of the ``n(n-1)/2`` pairs is kept
    independently with probability ``p``. Deterministic for a given seed
    (an int or a ``numpy.random.Generator``)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    return Graph(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def random_dataset(count: int, n_range=(2, 30), p_range=(0.05, 0.6), classes=2,
                   seed=None, name="random") -> Dataset:
    """A labelled dataset of random graphs of varying size and density."""
    rng = np.random.default_rng(seed)
    graphs = []
    for _ in range(count):
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        p = float(rng.uniform(*p_range))
        g = random_graph(n, p, rng)
        graphs.append(Graph(g.n, g.edges, int(rng.integers(classes))))
    return Dataset(name, graphs, classes)
