#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
CLI interface for ccdep using Click framework.

Every option can also be set through an environment variable named
``CCDEP_<COMMAND>_<OPTION>``, e.g. ``CCDEP_SCAN_MAX_FILE_BYTES``.
"""

import logging
import sys
from pathlib import Path

import click

from ccdep import __version__
from ccdep.analysis import (
    EmptyInputError,
    VulnerabilityMatcher,
    combos_table,
    compute_stats,
    evaluate_many,
    findings_table,
    load_ground_truth,
    popularity_table,
    results_table,
    tool_usage_table,
)
from ccdep.config import Config
from ccdep.database import (
    build_signature_db,
    clone_records,
    detect_clones,
    load_advisories,
    load_os_catalog,
    read_signature_db,
    read_sources_manifest,
    write_signature_db,
)
from ccdep.model import ToolKind
from ccdep.scanner import ScanConfig, list_supported_tools, scan_repository
from ccdep.utils.io import ReportReader, ReportWriter
from ccdep.utils.naming import NameNormalizer

logger = logging.getLogger(__name__)

TABLES = {
    "popularity": popularity_table,
    "combos": combos_table,
    "tools": tool_usage_table,
}


def _configure_logging(verbose: int, quiet: bool) -> None:
    if quiet:
        level = logging.ERROR
    elif verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(
        level=level,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def _emit(text: str, output) -> None:
    """Write machine output to ``output`` or standard output."""
    if output:
        ReportWriter.write_text(text, output)
        logger.info("Wrote %s", output)
    else:
        click.echo(text, nl=False)


def _read_reports(paths):
    try:
        reports = ReportReader.read_reports(paths)
    except (OSError, ValueError) as e:
        raise click.ClickException(str(e))
    if not reports:
        raise click.UsageError("No scan reports found in the given paths")
    return reports


def _normalizer(aliases, default_aliases):
    if aliases:
        return NameNormalizer.from_file(aliases, use_default_aliases=default_aliases)
    if default_aliases:
        return NameNormalizer(use_default_aliases=True)
    return None


def _parse_tools(ctx, param, value):
    if not value:
        return None
    try:
        return frozenset(ToolKind.from_name(name) for name in value.split(",") if name.strip())
    except ValueError as e:
        raise click.BadParameter(str(e))


@click.group(context_settings={"auto_envvar_prefix": Config.ENV_PREFIX})
@click.version_option(version=__version__)
@click.option("--verbose", "-v", count=True, help="Log more to stderr (-v info, -vv debug)")
@click.option("--quiet", "-q", is_flag=True, help="Only log errors")
def main(verbose, quiet):
    """
    ccdep - C/C++ third-party library dependency scanner

    Extract dependencies from the manifests of 21 package management
    tools, detect copied library code, and analyze reuse across many
    repositories.
    """
    _configure_logging(verbose, quiet)


@main.command("scan")
@click.argument("root", type=click.Path(exists=True, file_okay=False))
@click.option(
    "--output",
    "-o",
    type=click.Path(),
    default=None,
    help="Report file, or existing directory to write <repo_id>.json into (default: stdout)",
)
@click.option(
    "--clone-db",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Signature database enabling code clone detection",
)
@click.option(
    "--clone-threshold",
    type=click.FloatRange(0.0, 1.0),
    default=Config.CLONE_THRESHOLD_DEFAULT,
    help=f"Share of a library's functions that must match (default: {Config.CLONE_THRESHOLD_DEFAULT})",
)
@click.option(
    "--tools",
    callback=_parse_tools,
    default=None,
    help="Comma-separated tools to run (default: all)",
)
@click.option(
    "--max-file-bytes",
    type=click.IntRange(min=1),
    default=Config.DEFAULT_MAX_FILE_BYTES,
    help=f"Skip larger manifests (default: {Config.DEFAULT_MAX_FILE_BYTES})",
)
@click.option(
    "--workers",
    "-w",
    type=click.IntRange(min=1),
    default=Config.DEFAULT_WORKERS,
    help=f"Number of extraction threads (default: {Config.DEFAULT_WORKERS})",
)
@click.option("--repo-id", type=str, default=None, help="Report identifier (default: root directory name)")
@click.option("--follow-symlinks", is_flag=True, help="Follow symbolic links")
@click.option("--include-system-msbuild", is_flag=True, help="Keep Windows SDK libraries in MSBuild results")
@click.option("--no-timestamp", is_flag=True, help="Omit scanned_at for byte-stable reports")
def scan(root, output, clone_db, clone_threshold, tools, max_file_bytes, workers, repo_id,
         follow_symlinks, include_system_msbuild, no_timestamp):
    """
    Scan a repository for third-party library dependencies.
    """
    try:
        config = ScanConfig(
            root=Path(root),
            follow_symlinks=follow_symlinks,
            enabled_tools=tools,
            max_file_bytes=max_file_bytes,
            workers=workers,
            repo_id=repo_id,
            include_system_msbuild=include_system_msbuild,
        )
    except ValueError as e:
        raise click.UsageError(str(e))
    try:
        report = scan_repository(config)
        if clone_db:
            db = read_signature_db(clone_db)
            matches = detect_clones(root, db, threshold=clone_threshold, workers=workers)
            if matches:
                report = report.with_records(clone_records(matches), tools_found=[ToolKind.CLONE_SIG])
    except (OSError, ValueError, RuntimeError) as e:
        raise click.ClickException(str(e))

    if report.warnings:
        logger.warning("%d extraction warnings in %s", len(report.warnings), report.repo_id)
    if output:
        path = ReportWriter.write_report(report, output, include_timestamp=not no_timestamp)
        logger.info("Wrote %d records to %s", len(report.records), path)
    else:
        click.echo(ReportWriter.to_json(report.to_dict(include_timestamp=not no_timestamp)), nl=False)


@main.command("stats")
@click.argument("paths", nargs=-1, type=click.Path(exists=True))
@click.option(
    "--format",
    "-f",
    "output_format",
    type=click.Choice(["text", "csv", "json"], case_sensitive=False),
    default="text",
    help="Output format (default: text)",
)
@click.option(
    "--table",
    "-t",
    type=click.Choice(sorted(TABLES), case_sensitive=False),
    default=None,
    help="Table to print (default: all for text, popularity for csv)",
)
@click.option("--aliases", type=click.Path(exists=True, dir_okay=False), default=None, help="Alias table of 'alias canonical' lines")
@click.option("--default-aliases", is_flag=True, help="Also merge common spellings (gtest, zlib1g, absl, ...)")
@click.option("--exclude", "-x", multiple=True, help="Library left out of popularity metrics (repeatable)")
@click.option("--output", "-o", type=click.Path(), default=None, help="Output file (default: stdout)")
def stats(paths, output_format, table, aliases, default_aliases, exclude, output):
    """
    Compute ecosystem statistics over scan reports.

    PATHS are report files or directories of reports.
    """
    reports = _read_reports(paths)
    try:
        result = compute_stats(reports, exclude=exclude, normalizer=_normalizer(aliases, default_aliases))
    except EmptyInputError as e:
        raise click.UsageError(str(e))

    output_format = output_format.lower()
    if output_format == "json":
        _emit(ReportWriter.to_json(result.to_dict()), output)
        return
    if output_format == "csv":
        _emit(ReportWriter.table_to_csv(TABLES[table or "popularity"](result)), output)
        return

    if table:
        _emit(ReportWriter.table_to_text(TABLES[table](result)), output)
        return
    lines = [
        f"Repositories: {result.repo_count}",
        f"Dependencies: {result.dep_count}",
        "Phases: " + ", ".join(
            f"{phase.value} {result.phase_dep_share[phase]:.1%} of deps, {result.phase_repo_share[phase]:.1%} of repos"
            for phase in result.phase_dep_share
        ),
        f"Version specification rate: {result.version_spec_rate:.1%}",
    ]
    if result.gini is not None:
        lines.append(f"Popularity Gini: {result.gini:.3f}")
        lines.append("Top-k shares: " + ", ".join(f"top {k}% {share:.1%}" for k, share in result.topk_shares.items()))
    text = "\n".join(lines) + "\n\n"
    text += ReportWriter.table_to_text(tool_usage_table(result), "Tool usage (%)") + "\n"
    text += ReportWriter.table_to_text(popularity_table(result).head(20), "Most popular libraries") + "\n"
    text += ReportWriter.table_to_text(combos_table(result), "Toolchain combinations")
    _emit(text, output)


@main.command("vuln")
@click.argument("paths", nargs=-1, type=click.Path(exists=True))
@click.option(
    "--advisories",
    "-a",
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    help="Advisory file (JSON Lines)",
)
@click.option(
    "--os-catalog",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="OS-shipped versions ('library version' lines) for unconstrained dependencies",
)
@click.option(
    "--format",
    "-f",
    "output_format",
    type=click.Choice(["text", "csv", "json"], case_sensitive=False),
    default="text",
    help="Output format (default: text)",
)
@click.option("--output", "-o", type=click.Path(), default=None, help="Output file (default: stdout)")
def vuln(paths, advisories, os_catalog, output_format, output):
    """
    Match scan reports against vulnerability advisories.
    """
    reports = _read_reports(paths)
    try:
        database = load_advisories(advisories)
        catalog = load_os_catalog(os_catalog) if os_catalog else {}
    except (OSError, UnicodeDecodeError) as e:
        raise click.ClickException(str(e))
    assessment = VulnerabilityMatcher(database, catalog).assess(reports)

    output_format = output_format.lower()
    if output_format == "json":
        _emit(ReportWriter.to_json(assessment.to_dict()), output)
    elif output_format == "csv":
        _emit(ReportWriter.table_to_csv(findings_table(assessment.findings)), output)
    else:
        summary = assessment.summary
        text = (
            f"Vulnerable dependencies: {summary.vulnerable_deps} ({summary.vulnerable_dep_share:.1%})\n"
            f"Affected repositories: {summary.affected_repos} ({summary.affected_repo_share:.1%})\n"
            f"Unconstrained dependencies without OS version: {assessment.unmatched}\n\n"
        )
        text += ReportWriter.table_to_text(findings_table(assessment.findings), "Findings")
        _emit(text, output)


@main.command("eval")
@click.argument("paths", nargs=-1, type=click.Path(exists=True))
@click.option(
    "--truth",
    "-t",
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    help="Ground-truth file (JSON)",
)
@click.option(
    "--match",
    "match_on",
    type=click.Choice(["name", "name+tool"], case_sensitive=False),
    default="name",
    help="Match detections by library name, or by name and tool (default: name)",
)
@click.option("--version-aware", is_flag=True, help="Also require labelled versions to match")
@click.option("--aliases", type=click.Path(exists=True, dir_okay=False), default=None, help="Alias table of 'alias canonical' lines")
@click.option("--default-aliases", is_flag=True, help="Also merge common spellings (gtest, zlib1g, absl, ...)")
@click.option(
    "--format",
    "-f",
    "output_format",
    type=click.Choice(["text", "csv", "json"], case_sensitive=False),
    default="text",
    help="Output format (default: text)",
)
@click.option("--output", "-o", type=click.Path(), default=None, help="Output file (default: stdout)")
def evaluate_reports(paths, truth, match_on, version_aware, aliases, default_aliases, output_format, output):
    """
    Evaluate scan reports against labelled ground truth.

    Prints precision (P), recall on the full ground truth (R1), recall on
    the supported subset (R2) and F1 per repository; the "*" row is the
    micro-average.
    """
    reports = _read_reports(paths)
    try:
        truths = load_ground_truth(truth)
        results = evaluate_many(reports, truths, match_on.lower(), version_aware, _normalizer(aliases, default_aliases))
    except EmptyInputError as e:
        raise click.UsageError(str(e))
    except ValueError as e:
        raise click.ClickException(str(e))

    output_format = output_format.lower()
    if output_format == "json":
        _emit(ReportWriter.to_json({repo: result.to_dict() for repo, result in results.items()}), output)
    elif output_format == "csv":
        _emit(ReportWriter.table_to_csv(results_table(results)), output)
    else:
        table = results_table(results).round(3).astype(object).where(lambda df: df.notna(), "/")
        _emit(ReportWriter.table_to_text(table), output)


@main.command("build-clone-db")
@click.option(
    "--manifest",
    "-m",
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    help="Sources manifest of '<library> <path>' lines",
)
@click.option("--output", "-o", type=click.Path(), required=True, help="Signature database file to write")
@click.option(
    "--workers",
    "-w",
    type=click.IntRange(min=1),
    default=Config.DEFAULT_WORKERS,
    help=f"Number of hashing threads (default: {Config.DEFAULT_WORKERS})",
)
def build_clone_db(manifest, output, workers):
    """
    Build the signature database used for clone detection.
    """
    try:
        sources = read_sources_manifest(manifest)
    except ValueError as e:
        raise click.UsageError(str(e))
    if not sources:
        raise click.UsageError(f"Sources manifest {manifest} lists no libraries")

    db = build_signature_db(sources, workers=workers)
    if len(db) == 0:
        raise click.ClickException("No library in the manifest produced any function signature")
    write_signature_db(db, output)
    click.echo(f"Wrote {len(db)} libraries to {output}", err=True)


@main.command("tools")
@click.option("--with-clone", is_flag=True, help="Also list clone detection (needs a signature database)")
def tools(with_clone):
    """
    List the supported tools, their phase and the files they read.
    """
    for tool, patterns, phase in list_supported_tools(clone_db_configured=with_clone):
        click.echo(f"{tool.value:<14}{phase.value:<9}{' '.join(patterns)}")


if __name__ == "__main__":
    main()
