"""Command-line interface: ``build-stats``, ``summarize`` and ``batch``."""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .config import SummaryConfig, convert, resolve_config
from .document import parse_file
from .errors import ConfigError, XmlParseError, XmlSummError
from .stats import build_stats, load_stats, save_stats
from .summarizer import summarize


class CliError(Exception):
    pass


def _fail(message: str) -> int:
    print(f"error: {' '.join(str(message).split())}", file=sys.stderr)
    return 2


def write_atomic(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _xml_files(directory) -> list[Path]:
    directory = Path(directory)
    if not directory.is_dir():
        raise CliError(f"cannot read directory {directory}")
    try:
        return sorted(p for p in directory.iterdir() if p.suffix == ".xml" and p.is_file())
    except OSError as exc:
        raise CliError(f"cannot read directory {directory}: {exc.strerror}") from None


def cmd_build_stats(args) -> int:
    files = _xml_files(args.corpus)
    skipped = 0

    def documents():
        nonlocal skipped
        for path in files:
            try:
                yield parse_file(path)
            except (XmlParseError, OSError) as exc:
                skipped += 1
                print(f"warning: skipping {path}: {exc}", file=sys.stderr)

    stats = build_stats(documents())
    save_stats(stats, args.out)
    print(f"documents: {stats.num_documents}, tag units: {len(stats.doc_frequency)}, "
          f"skipped: {skipped}")
    return 0


def _overrides(args) -> dict:
    values = {}
    for key in ("size", "alpha", "beta", "lambda", "mu", "centroid-m", "entities",
                "long-text-threshold", "seed", "stopwords"):
        raw = getattr(args, key.replace("-", "_"), None)
        if raw is not None:
            name, value = convert(key, raw)
            values[name] = value
    return values


def _load_inputs(stats_path):
    try:
        return load_stats(stats_path)
    except OSError as exc:
        raise CliError(f"cannot read stats file {stats_path}: {exc.strerror}") from None


def _check_readable(path, what):
    if not Path(path).is_file():
        raise CliError(f"cannot read {what} {path}")


def cmd_summarize(args) -> int:
    config = resolve_config(_overrides(args))
    _check_readable(args.doc, "document")
    stats = _load_inputs(args.stats)
    summary = summarize(parse_file(args.doc), stats, config)
    write_atomic(args.out, summary.to_xml())
    return 0


def parse_sweep(text: str) -> tuple[list[int], list[float]]:
    """Parse ``sizes=5,10,20;alphas=1.0,0.8,0.6``."""
    parts = {}
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        if "=" not in chunk:
            raise ConfigError(f"malformed sweep component {chunk!r}")
        key, values = chunk.split("=", 1)
        parts[key.strip()] = [v.strip() for v in values.split(",") if v.strip()]
    unknown = set(parts) - {"sizes", "alphas"}
    if unknown:
        raise ConfigError(f"unknown sweep key {sorted(unknown)[0]!r}")
    try:
        sizes = [int(v) for v in parts.get("sizes", [])]
        alphas = [float(v) for v in parts.get("alphas", [])]
    except ValueError as exc:
        raise ConfigError(f"malformed sweep: {exc}") from None
    if not sizes or not alphas:
        raise ConfigError("sweep needs both sizes and alphas")
    return sizes, alphas


def cmd_batch(args) -> int:
    base = resolve_config(_overrides(args))
    sizes, alphas = parse_sweep(args.sweep)
    configs = [base.replace(size=s, alpha=a).validate() for s in sizes for a in alphas]
    files = _xml_files(args.docs)
    if not files:
        raise CliError(f"no .xml documents in {args.docs}")
    stats = _load_inputs(args.stats)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    def run(path):
        doc = parse_file(path)
        for cfg in configs:
            name = f"{path.stem}_{cfg.size}_{cfg.alpha!r}.xml"
            write_atomic(out_dir / name, summarize(doc, stats, cfg).to_xml())
        return path

    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        for _ in pool.map(run, files):
            pass
    print(f"documents: {len(files)}, summaries: {len(files) * len(configs)}")
    return 0


def _add_summary_flags(p, with_size=True):
    if with_size:
        p.add_argument("--size", help="summary size in tag-text pairs")
    p.add_argument("--alpha", help="typicality weight in [0,1]")
    p.add_argument("--beta", help="MMR relevance weight in [0,1]")
    p.add_argument("--lambda", dest="lambda", help="tag-context text weight")
    p.add_argument("--mu", help="document-context text weight")
    p.add_argument("--centroid-m", help="centroid query size")
    p.add_argument("--entities", help="comma-separated entity tag paths")
    p.add_argument("--long-text-threshold", help="mean term count marking long text")
    p.add_argument("--seed", help="random seed for tied siblings")
    p.add_argument("--stopwords", help="stopword file, one word per line")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="xmlsumm", description="Size-constrained summaries of XML documents.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build-stats", help="aggregate corpus statistics")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build_stats)

    p = sub.add_parser("summarize", help="summarize one document")
    p.add_argument("--doc", required=True)
    p.add_argument("--stats", required=True)
    p.add_argument("--out", required=True)
    _add_summary_flags(p)
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("batch", help="summarize a directory over a parameter grid")
    p.add_argument("--docs", required=True)
    p.add_argument("--stats", required=True)
    p.add_argument("--sweep", required=True, help="e.g. 'sizes=5,10,20;alphas=1.0,0.8,0.6'")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--jobs", type=int, default=1)
    _add_summary_flags(p, with_size=False)
    p.set_defaults(func=cmd_batch)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (CliError, XmlSummError, OSError) as exc:
        return _fail(exc)


if __name__ == "__main__":
    sys.exit(main())
