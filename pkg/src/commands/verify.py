# src/commands/verify.py
import logging

import click

from src.commands.common import (
    EXIT_PROVED,
    EXIT_UNKNOWN,
    EXIT_VIOLATION,
    build_manifest,
    handle_errors,
    load_inputs,
    run_options,
)
from src.models.errors import PropertyError
from src.services.report_service import ReportService
from src.services.verification_service import VerificationService

logger = logging.getLogger(__name__)


def exit_code_for(reports) -> int:
    """0 se tudo provado, 1 se houver massa de violação, 2 se só restar massa indecidida."""
    if any(r.violation_rate > 0.0 for r in reports):
        return EXIT_VIOLATION
    if all(r.fully_proved for r in reports):
        return EXIT_PROVED
    return EXIT_UNKNOWN


@click.command("verify")
@run_options
@handle_errors
def verify_cmd(**options):
    """Verifica as propriedades e grava um relatório por propriedade mais o agregado."""
    manifest = build_manifest(**options)
    net, properties = load_inputs(manifest)
    if not properties:
        raise PropertyError("nenhuma propriedade para verificar")

    reports = [VerificationService.verify(net, prop, manifest.config) for prop in properties]
    aggregate = VerificationService.aggregate(reports)

    if "json" in manifest.report_formats:
        ReportService.write_report_jsons(reports, manifest.output_dir)
        ReportService.write_aggregate_json(aggregate, manifest.output_dir)
    if "csv" in manifest.report_formats:
        ReportService.write_aggregate_csv(aggregate, manifest.output_dir)

    for report in reports:
        click.echo(
            f"{report.property_name}: safe={report.safe_rate:.6f} "
            f"violation={report.violation_rate:.6f} unknown={report.unknown_rate:.6f} "
            f"counterexamples={len(report.counterexamples)}"
        )
    click.echo(
        f"mean: safe={aggregate.safe_rate:.6f} violation={aggregate.violation_rate:.6f} "
        f"unknown={aggregate.unknown_rate:.6f}"
    )
    code = exit_code_for(reports)
    logger.info(f"verify finalizado com código {code}")
    raise SystemExit(code)
