"""Command line front end.

Every angle is in radians and every entropy or log quantity is in bits.
The rotation convention is R_z(theta) = exp(-i theta Z) =
diag(e^{-i theta}, e^{i theta}), so the T gate sits at theta = pi / 8.
States come from --preset, --state-json (a file holding {"n", "re",
"im"}), or --circuit (one gate per line, e.g. ``rz(0.3927) 0``); gates
come from --gate plus --theta / --qubits, or from a circuit file.

Exit codes: 0 on success, 2 for usage errors, 1 for everything else.
Commands that take --seed treat 0 as "draw a fresh seed from OS entropy
and print it"; pass any other value to reproduce a run exactly.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click
import numpy as np

from .amortize import (
    amortized_sre_lower_bound,
    direct_lemma_min_eig,
    strict_amortized_sre,
    verify_psd_lemmas,
    verify_r2_inequalities,
)
from .decompositions import (
    robustness_of_magic,
    stabilizer_extent,
    strict_amortized_log_extent,
    strict_amortized_log_rom,
    write_decomposition_json,
)
from .pauli import full_spectrum, write_spectrum_csv
from .sre import nonstabilizing_power, renyi_entropy
from .stabilizers import enumerate_stabilizer_states
from .states import (
    StateVector,
    build_gate,
    parse_circuit,
    preset_state,
    run_circuit,
    state_from_json,
)
from .tcount import (
    scan_heisenberg,
    scan_rz,
    tcount_bound_ccrz,
    tcount_lower_bound,
    write_ccrz_scan_csv,
    write_heisenberg_scan_csv,
    write_rz_scan_csv,
)

CACHE_ENV_VAR = "MAGICGEN_CACHE_DIR"


def _cache_dir(option_value):
    return option_value or os.environ.get(CACHE_ENV_VAR)


def _resolve_seed(seed: int) -> int:
    if seed != 0:
        return seed
    derived = int(np.random.SeedSequence().entropy % 2**63) or 1
    click.echo(f"seed = {derived}")
    return derived


def _state_options(fn):
    fn = click.option(
        "--preset", default=None, help="named state, e.g. t-plus, magic-pi10, ghz"
    )(fn)
    fn = click.option(
        "--qubits", type=int, default=None,
        help="tensor-power width for single-qubit presets",
    )(fn)
    fn = click.option(
        "--state-json", type=click.Path(exists=True, dir_okay=False), default=None,
        help='file holding {"n", "re", "im"}',
    )(fn)
    fn = click.option(
        "--circuit", type=click.Path(exists=True, dir_okay=False), default=None,
        help="circuit file applied to |0...0>",
    )(fn)
    return fn


def _gate_options(fn):
    fn = click.option("--gate", default=None, help="gate name, e.g. t, ccz, rz, qft")(fn)
    fn = click.option("--theta", type=float, default=None, help="angle for rz/rx/ccrz (radians)")(fn)
    fn = click.option("--qubits", type=int, default=None, help="size for qft")(fn)
    fn = click.option(
        "--circuit", type=click.Path(exists=True, dir_okay=False), default=None,
        help="circuit file used as the unitary",
    )(fn)
    return fn


def _resolve_state(preset, qubits, state_json, circuit) -> StateVector:
    provided = sum(x is not None for x in (preset, state_json, circuit))
    if provided != 1:
        raise click.UsageError("provide exactly one of --preset, --state-json, --circuit")
    if preset is not None:
        return preset_state(preset, qubits if qubits else 1)
    if state_json is not None:
        return state_from_json(Path(state_json).read_text(encoding="utf-8"))
    spec = parse_circuit(Path(circuit).read_text(encoding="utf-8"))
    return run_circuit(spec).apply(StateVector.computational(spec.n))


def _resolve_gate(gate, theta, qubits, circuit):
    if (gate is None) == (circuit is None):
        raise click.UsageError("provide exactly one of --gate, --circuit")
    if circuit is not None:
        return run_circuit(parse_circuit(Path(circuit).read_text(encoding="utf-8")))
    params = () if theta is None else (theta,)
    return build_gate(gate, params, n=qubits)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option(
    "--threads", type=int, default=None,
    help="cap numerical library threads; outputs are identical either way",
)
def cli(threads):
    """Quantify nonstabilizerness of states and gates.

    Angles in radians, entropies in bits, R_z(theta) = exp(-i theta Z).
    """
    if threads is not None:
        if threads < 1:
            raise click.UsageError("--threads must be at least 1")
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ[var] = str(threads)


@cli.command()
@_state_options
@click.option("--alpha", type=float, default=2.0, show_default=True)
def sre(preset, qubits, state_json, circuit, alpha):
    """Stabilizer Renyi entropy M_alpha of a state, in bits."""
    state = _resolve_state(preset, qubits, state_json, circuit)
    click.echo(f"{renyi_entropy(state, alpha).value:.12g}")


@cli.command()
@_state_options
@click.option("--output", type=click.Path(dir_okay=False), default=None,
              help="CSV destination (default: stdout)")
@click.option("--method", type=click.Choice(["fast", "naive"]), default="fast",
              show_default=True)
def spectrum(preset, qubits, state_json, circuit, output, method):
    """All 4^n Pauli expectations as x_mask,z_mask,expectation CSV."""
    state = _resolve_state(preset, qubits, state_json, circuit)
    spec = full_spectrum(state, method=method)
    if output is None:
        write_spectrum_csv(spec, sys.stdout)
    else:
        write_spectrum_csv(spec, output)
        click.echo(f"wrote {output} ({4**state.n} rows)")


@cli.command()
@_state_options
@click.option("--output", type=click.Path(dir_okay=False), default=None,
              help="JSON destination (default: stdout)")
@click.option("--allow-large", is_flag=True, help="permit the 4-qubit dictionary")
@click.option("--cache-dir", type=click.Path(file_okay=False), default=None)
def rom(preset, qubits, state_json, circuit, output, allow_large, cache_dir):
    """Robustness of magic via the stabilizer-projector linear program."""
    state = _resolve_state(preset, qubits, state_json, circuit)
    dec = robustness_of_magic(state, allow_large=allow_large, cache_dir=_cache_dir(cache_dir))
    if output is None:
        click.echo(json.dumps(dec.to_json(), indent=2))
    else:
        write_decomposition_json(dec, output)
        click.echo(
            f"robustness = {dec.objective:.12g} "
            f"({len(dec.indices)} terms, residual {dec.residual:.2e}) -> {output}"
        )


@cli.command()
@_state_options
@click.option("--output", type=click.Path(dir_okay=False), default=None,
              help="JSON destination (default: stdout)")
@click.option("--allow-large", is_flag=True, help="permit the 4-qubit dictionary")
@click.option("--cache-dir", type=click.Path(file_okay=False), default=None)
def extent(preset, qubits, state_json, circuit, output, allow_large, cache_dir):
    """Stabilizer extent via certified complex basis pursuit."""
    state = _resolve_state(preset, qubits, state_json, circuit)
    dec = stabilizer_extent(state, allow_large=allow_large, cache_dir=_cache_dir(cache_dir))
    if output is None:
        click.echo(json.dumps(dec.to_json(), indent=2))
    else:
        write_decomposition_json(dec, output)
        click.echo(
            f"extent = {dec.objective:.12g} "
            f"({len(dec.indices)} terms, dual gap {dec.dual_gap:.2e}) -> {output}"
        )


@cli.command()
@_gate_options
@click.option("--alpha", type=float, default=2.0, show_default=True)
@click.option("-m", "--ancillas", type=int, default=None,
              help="ancilla count (default: one per gate qubit)")
@click.option("--restarts", type=int, default=20, show_default=True)
@click.option("--seed", type=int, default=0, help="0 draws and prints a fresh seed")
@click.option("--report", type=click.Path(dir_okay=False), default=None,
              help="write the full optimizer report as JSON")
def amortize(gate, theta, qubits, circuit, alpha, ancillas, restarts, seed, report):
    """Ascent lower bound on the amortized alpha-SRE of a gate."""
    u = _resolve_gate(gate, theta, qubits, circuit)
    seed = _resolve_seed(seed)
    rep = amortized_sre_lower_bound(
        u, alpha=alpha, m=ancillas, restarts=restarts, seed=seed
    )
    click.echo(f"amortized_sre_lb = {rep.best_value:.12g}")
    click.echo(f"converged = {str(rep.converged).lower()}")
    click.echo(f"iterations = {rep.iterations}")
    click.echo(f"final_gradient_norm = {rep.final_gradient_norm:.3g}")
    click.echo(f"restarts_run = {rep.restarts_run}")
    click.echo(f"wall_time = {rep.wall_time:.3f}s")
    if report is not None:
        payload = {
            "best_value": rep.best_value,
            "best_state": {
                "n": rep.best_state.n,
                "re": rep.best_state.amplitudes.real.tolist(),
                "im": rep.best_state.amplitudes.imag.tolist(),
            },
            "restarts_run": rep.restarts_run,
            "iterations": rep.iterations,
            "final_gradient_norm": rep.final_gradient_norm,
            "converged": rep.converged,
            "seed": rep.seed,
            "wall_time": rep.wall_time,
        }
        Path(report).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        click.echo(f"report -> {report}")


@cli.command()
@_gate_options
@click.option(
    "--measure", type=click.Choice(["sre", "log-rom", "log-extent"]),
    default="sre", show_default=True,
)
@click.option("--alpha", type=float, default=2.0, show_default=True,
              help="entropy index (sre measure only)")
@click.option("--allow-large", is_flag=True,
              help="permit 4-qubit enumeration (2-qubit gates, sre measure)")
@click.option("--cache-dir", type=click.Path(file_okay=False), default=None)
def strict(gate, theta, qubits, circuit, measure, alpha, allow_large, cache_dir):
    """Strict amortized measure: maximize over stabilizer inputs only."""
    u = _resolve_gate(gate, theta, qubits, circuit)
    if measure == "sre":
        value = strict_amortized_sre(
            u, alpha=alpha, allow_large=allow_large, cache_dir=_cache_dir(cache_dir)
        )
    elif measure == "log-rom":
        value = strict_amortized_log_rom(u)
    else:
        value = strict_amortized_log_extent(u)
    click.echo(f"{value:.12g}")


@cli.command()
@_gate_options
@click.option("--json", "json_path", type=click.Path(dir_okay=False), default=None,
              help="also write the report as JSON")
def tcount(gate, theta, qubits, circuit, json_path):
    """T-count lower bounds from the Choi state and stabilizer nullity."""
    u = _resolve_gate(gate, theta, qubits, circuit)
    label = gate if gate else Path(circuit).stem
    rep = tcount_lower_bound(u, label=label)
    click.echo(f"choi_sre = {rep.choi_sre:.12g}")
    click.echo(f"sre_bound = {rep.sre_bound}")
    click.echo(f"nullity_bound = {rep.nullity_bound}")
    click.echo(f"note = {rep.note}")
    if json_path is not None:
        payload = {
            "label": rep.label,
            "choi_sre": rep.choi_sre,
            "sre_bound": rep.sre_bound,
            "nullity_bound": rep.nullity_bound,
            "parameters": rep.parameters,
            "note": rep.note,
        }
        Path(json_path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


@cli.command("scan-rz")
@click.option("--output", type=click.Path(dir_okay=False), default="rz_scan.csv",
              show_default=True)
@click.option("--points", type=int, default=33, show_default=True)
@click.option("--theta-max", type=float, default=np.pi / 4,
              help="grid end (default: pi/4)")
@click.option("--restarts", type=int, default=20, show_default=True)
@click.option("--seed", type=int, default=0, help="0 draws and prints a fresh seed")
@click.option("--no-figure", is_flag=True, help="skip the PNG next to the CSV")
def scan_rz_cmd(output, points, theta_max, restarts, seed, no_figure):
    """Sweep R_z(theta): amortized bound, strict SRE, log-RoM, log-extent."""
    seed = _resolve_seed(seed)
    grid = np.linspace(0.0, theta_max, points)
    rows = scan_rz(grid, restarts=restarts, seed=seed)
    write_rz_scan_csv(rows, output)
    click.echo(f"wrote {output} ({len(rows)} rows)")
    if not no_figure:
        from .figures import render_rz_scan

        figure_path = str(Path(output).with_suffix(".png"))
        render_rz_scan(rows, figure_path)
        click.echo(f"wrote {figure_path}")


@cli.command("scan-heisenberg")
@click.option("--output", type=click.Path(dir_okay=False), default="heisenberg_scan.csv",
              show_default=True)
@click.option("-N", "--sites", type=int, default=4, show_default=True)
@click.option("--delta", type=float, default=0.2, show_default=True)
@click.option("-W", "--disorder", "disorders", type=float, multiple=True,
              help="disorder half-widths (default: 0.5 1 2 5)")
@click.option("--t-max", type=float, default=3.0, show_default=True)
@click.option("--points", type=int, default=25, show_default=True)
@click.option("--boundary", type=click.Choice(["periodic", "open"]), default="periodic",
              show_default=True)
@click.option("--seed", type=int, default=0, help="0 draws and prints a fresh seed")
@click.option("--no-figure", is_flag=True, help="skip the PNG next to the CSV")
def scan_heisenberg_cmd(output, sites, delta, disorders, t_max, points, boundary, seed, no_figure):
    """T-count bounds along disordered Heisenberg time evolution."""
    seed = _resolve_seed(seed)
    w_values = disorders if disorders else (0.5, 1.0, 2.0, 5.0)
    rows = scan_heisenberg(
        n=sites,
        delta=delta,
        w_values=w_values,
        t_grid=np.linspace(0.0, t_max, points),
        seed=seed,
        boundary=boundary,
    )
    write_heisenberg_scan_csv(rows, output)
    click.echo(f"wrote {output} ({len(rows)} rows)")
    if not no_figure:
        from .figures import render_heisenberg_scan

        figure_path = str(Path(output).with_suffix(".png"))
        render_heisenberg_scan(rows, figure_path)
        click.echo(f"wrote {figure_path}")


@cli.command()
@click.option("--output", type=click.Path(dir_okay=False), default="ccrz_scan.csv",
              show_default=True)
@click.option("--points", type=int, default=25, show_default=True)
@click.option("--theta-min", type=float, default=2 * np.pi / 3, help="default: 2pi/3")
@click.option("--theta-max", type=float, default=4 * np.pi / 3, help="default: 4pi/3")
@click.option("--no-figure", is_flag=True, help="skip the PNG next to the CSV")
def ccrz(output, points, theta_min, theta_max, no_figure):
    """T-count bounds for the doubly controlled phase gate CCR_z(theta)."""
    rows = tcount_bound_ccrz(np.linspace(theta_min, theta_max, points))
    write_ccrz_scan_csv(rows, output)
    click.echo(f"wrote {output} ({len(rows)} rows)")
    if not no_figure:
        from .figures import render_ccrz_scan

        figure_path = str(Path(output).with_suffix(".png"))
        render_ccrz_scan(rows, figure_path)
        click.echo(f"wrote {figure_path}")


@cli.command("nonstab-power")
@_gate_options
@click.option("--alpha", type=float, default=2.0, show_default=True)
def nonstab_power(gate, theta, qubits, circuit, alpha):
    """Average output SRE over all stabilizer inputs (no ancillas)."""
    u = _resolve_gate(gate, theta, qubits, circuit)
    click.echo(f"{nonstabilizing_power(u, alpha):.12g}")


@cli.command("enumerate-stab")
@click.option("-n", "--n", "n", type=int, required=True)
@click.option("--allow-large", is_flag=True, help="permit n = 4 (36720 states)")
@click.option("--cache-dir", type=click.Path(file_okay=False), default=None,
              help=f"amplitude cache directory (or ${CACHE_ENV_VAR})")
@click.option("--output", type=click.Path(dir_okay=False), default=None,
              help="save the amplitude table as .npz")
def enumerate_stab(n, allow_large, cache_dir, output):
    """Count (and optionally save) all pure stabilizer states on n qubits."""
    stab = enumerate_stabilizer_states(
        n, allow_large=allow_large, cache_dir=_cache_dir(cache_dir)
    )
    click.echo(f"{stab.count}")
    if output is not None:
        np.savez_compressed(output, amplitudes=stab.table)
        click.echo(f"wrote {output}")


@cli.command()
@click.option("--trials", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=0, help="0 draws and prints a fresh seed")
@click.option("--skip-direct", is_flag=True,
              help="skip the 4096-dimensional eigenvalue confirmation")
def verify(trials, seed, skip_direct):
    """Run the built-in inequality and positivity certificates."""
    seed = _resolve_seed(seed)
    margin_t = verify_r2_inequalities("t", trials=trials, seed=seed)
    click.echo(f"r2_t_min_margin = {margin_t:.6g}")
    if margin_t < -1e-9:
        raise RuntimeError("T-gate R2 inequality violated")
    margin_ccz = verify_r2_inequalities("ccz", trials=trials, seed=seed)
    click.echo(f"r2_ccz_min_margin = {margin_ccz:.6g}")
    if margin_ccz < -1e-9:
        raise RuntimeError("CCZ R2 inequality violated")
    report = verify_psd_lemmas()
    for key, value in report.items():
        click.echo(f"psd_{key} = {value}")
    if not skip_direct:
        low = direct_lemma_min_eig()
        click.echo(f"direct_min_eig = {low:.6g}")
        if low < -1e-9:
            raise RuntimeError("direct eigenvalue check failed")
    click.echo("all checks passed")


@cli.command("dagger-compare")
@_gate_options
@click.option("--alpha", type=float, default=2.0, show_default=True)
@click.option("-m", "--ancillas", type=int, default=None)
@click.option("--restarts", type=int, default=20, show_default=True)
@click.option("--seed", type=int, default=0, help="0 draws and prints a fresh seed")
def dagger_compare(gate, theta, qubits, circuit, alpha, ancillas, restarts, seed):
    """Amortized bounds for U and U-dagger side by side.

    Whether the two always agree is open; this command reports, it does
    not judge.
    """
    u = _resolve_gate(gate, theta, qubits, circuit)
    seed = _resolve_seed(seed)
    forward = amortized_sre_lower_bound(
        u, alpha=alpha, m=ancillas, restarts=restarts, seed=seed
    )
    backward = amortized_sre_lower_bound(
        u.dagger(), alpha=alpha, m=ancillas, restarts=restarts, seed=seed
    )
    click.echo(f"forward = {forward.best_value:.12g} (converged {str(forward.converged).lower()})")
    click.echo(f"dagger = {backward.best_value:.12g} (converged {str(backward.converged).lower()})")
    click.echo(f"difference = {forward.best_value - backward.best_value:+.3e}")


def main():
    try:
        cli.main(standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        sys.exit(exc.exit_code)
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
