"""Command-line entrypoints: serve, ingest, index build, plan, eval."""

from __future__ import annotations

import json
import logging
import sys
import time
from pathlib import Path

import click

from .config import load_config
from .dialogue.models import TripRequest
from .ingest.crawler import Crawler, FixtureFetcher, HttpFetcher
from .ingest.pipeline import (build_manifest, ingest_directory, ingest_export,
                              load_manifest, manifest_chunks, write_manifest)
from .planner.models import Itinerary
from .planner.oracle import brute_force_plan
from .planner.solver import plan as plan_itinerary
from .planner.validation import validate
from .pois.models import Poi, TravelMatrix
from .pois.travel import build_matrix
from .retrieval.embeddings import MockEmbeddingProvider
from .retrieval.index import IndexEntry, VectorIndex

logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help="Path to the JSON config file.")
@click.pass_context
def main(ctx, config_path):
    ctx.obj = load_config(config_path)


@main.command()
@click.pass_obj
def serve(cfg):
    """Run the HTTP service (meant to sit behind a reverse proxy)."""
    import uvicorn
    from .service.app import create_app
    from .service.runtime import Runtime
    app = create_app(Runtime(cfg))
    uvicorn.run(app, host=cfg.service.host, port=cfg.service.port)


@main.group()
def ingest():
    """Supervised one-off ingestion runs."""


@ingest.command("dir")
@click.argument("path", type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default="manifest.json")
@click.pass_obj
def ingest_dir_cmd(cfg, path, out):
    documents, skips = ingest_directory(path)
    manifest = build_manifest(documents, skips, cfg.chunking.max_tokens,
                              cfg.chunking.overlap)
    write_manifest(manifest, out)
    click.echo(f"documents={len(documents)} chunks={len(manifest['chunks'])} "
               f"skips={len(skips)} -> {out}")


@ingest.command("crawl")
@click.argument("seed_urls", nargs=-1, required=True)
@click.option("--max-pages", type=int, default=None)
@click.option("--max-depth", type=int, default=None)
@click.option("--fixture-dir", type=click.Path(exists=True), default=None,
              help="Serve the crawl from a local directory instead of the network.")
@click.option("--out", type=click.Path(), default="manifest.json")
@click.pass_obj
def ingest_crawl_cmd(cfg, seed_urls, max_pages, max_depth, fixture_dir, out):
    from urllib.parse import urlsplit
    if fixture_dir:
        hosts = {urlsplit(u).netloc: fixture_dir for u in seed_urls}
        fetcher = FixtureFetcher(hosts)
    else:
        fetcher = HttpFetcher(cfg.crawl.user_agent)
    crawler = Crawler(fetcher, delay_seconds=cfg.crawl.delay_seconds)
    documents, skips = crawler.crawl(list(seed_urls),
                                     max_pages or cfg.crawl.max_pages,
                                     max_depth or cfg.crawl.max_depth)
    manifest = build_manifest(documents, skips, cfg.chunking.max_tokens,
                              cfg.chunking.overlap)
    write_manifest(manifest, out)
    click.echo(f"documents={len(documents)} skips={len(skips)} "
               f"requests={len(crawler.log.entries)} -> {out}")


@ingest.command("export")
@click.argument("dump_path", type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default="manifest.json")
@click.pass_obj
def ingest_export_cmd(cfg, dump_path, out):
    documents, skips = ingest_export(dump_path)
    manifest = build_manifest(documents, skips, cfg.chunking.max_tokens,
                              cfg.chunking.overlap)
    write_manifest(manifest, out)
    click.echo(f"documents={len(documents)} skips={len(skips)} -> {out}")


@main.group()
def index():
    """Vector index maintenance."""


@index.command("build")
@click.option("--manifest", "manifest_path", type=click.Path(exists=True), required=True)
@click.option("--out", type=click.Path(), default=None)
@click.pass_obj
def index_build_cmd(cfg, manifest_path, out):
    manifest = load_manifest(manifest_path)
    chunks = manifest_chunks(manifest)
    embedder = MockEmbeddingProvider(dim=cfg.retrieval.embed_dim)
    store = VectorIndex(cfg.retrieval.embed_dim, embedder=embedder)
    if chunks:
        vectors = embedder.embed([c.text for c in chunks])
        entries = [IndexEntry(c.chunk_id, v, {**c.metadata, "text": c.text})
                   for c, v in zip(chunks, vectors)]
        store.add(entries)
    out = out or str(cfg.data_path / "index" / "snapshot.json")
    Path(out).parent.mkdir(parents=True, exist_ok=True)
    store.save(out)
    click.echo(f"indexed {len(store)} chunks -> {out}")


def _load_instance(path: str):
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    request = TripRequest.from_dict(data["request"])
    pois = [Poi.from_dict(p) for p in data["pois"]]
    if data.get("matrix"):
        matrix = TravelMatrix.from_dict(data["matrix"])
    else:
        matrix = build_matrix(pois, data.get("mode", "walk"))
    return request, pois, matrix


@main.command("plan")
@click.argument("instance_file", type=click.Path(exists=True))
@click.option("--out", type=click.Path(), default=None)
@click.pass_obj
def plan_cmd(cfg, instance_file, out):
    """Plan the itinerary for a JSON instance file."""
    request, pois, matrix = _load_instance(instance_file)
    started = time.perf_counter()
    itinerary, diagnostics = plan_itinerary(request, pois, matrix, cfg.planner)
    elapsed = time.perf_counter() - started
    names = {p.id: p.name for p in pois}
    result = {"itinerary": itinerary.to_dict(names),
              "diagnostics": diagnostics.to_dict(),
              "elapsed_seconds": round(elapsed, 4)}
    text = json.dumps(result, ensure_ascii=False, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
        click.echo(f"wrote {out}")
    else:
        click.echo(text)


@main.group()
def eval():
    """Quality evaluations against the independent oracles."""


@eval.command("retrieval")
@click.option("--entries", type=int, default=1000)
@click.option("--queries", type=int, default=50)
@click.option("--seed", type=int, default=13)
@click.pass_obj
def eval_retrieval_cmd(cfg, entries, queries, seed, ):
    from .evalsuite import retrieval_exactness
    report = retrieval_exactness(entries, queries, seed, dim=cfg.retrieval.embed_dim)
    click.echo(json.dumps(report, indent=2, sort_keys=True))
    sys.exit(0 if report["exact"] else 1)


@eval.command("planner")
@click.option("--instances", type=int, default=100)
@click.option("--seed", type=int, default=42)
@click.pass_obj
def eval_planner_cmd(cfg, instances, seed):
    from .evalsuite import planner_oracle_gap
    report = planner_oracle_gap(instances, seed, cfg.planner)
    click.echo(json.dumps(report, indent=2, sort_keys=True))
    sys.exit(0 if report["min_ratio"] >= 0.9 else 1)


if __name__ == "__main__":
    main()
