"""Certify command - curvature certificate and sampled Lipschitz check"""

from domcert.commands.common import (
    default_report_path,
    emit,
    load_run_config,
    require_converged,
    run_options,
    solve_config,
    with_input_errors,
)
from domcert.conical import lipschitz_sample_check
from domcert.pipeline import conical_stage
from domcert.utils.display import print_certificate, print_domination, print_solve_summary
from domcert.utils.rich_click_config import click


@click.command()
@run_options
@click.help_option("-h", "--help")
@with_input_errors
def certify(config_path, fixture_name, seed, tol, max_iter, samples, out_path, trace_path):
    """Glue the conical surface of the harmonic map and certify curvature <= -1.

    Also samples the Lipschitz ratio of the map from the surface to the target.

    Examples:

    \b
        domcert certify --fixture fuchsian_octagon_g2 --samples 2000
    """
    config = load_run_config(config_path, fixture_name, seed, tol, max_iter, samples)
    t, rep, outcome = solve_config(config, trace_path)
    print_solve_summary(outcome.summary(t, rep))
    require_converged(outcome, "certify")

    sampling = config.sampling
    lengths, surface, certificate = conical_stage(t, rep, outcome.map, sampling.certificate_tol)
    conical = surface.summary()
    print_certificate(certificate, conical)
    domination = None
    if not surface.flatten.flat_edges and not surface.flat_faces:
        domination = lipschitz_sample_check(surface, t, rep, outcome.map, sampling.pairs, sampling.seed)
        print_domination(domination)
    else:
        click.echo("Degenerate surface: run `domcert desing` for the perturbed check.", err=True)

    document = {
        "lengths": lengths.to_dict(t),
        "conical": conical.model_dump(mode="json"),
        "curvature": certificate.model_dump(mode="json"),
        "domination": domination.model_dump(mode="json") if domination is not None else None,
    }
    emit(document, out_path or default_report_path(config, "certify"))
