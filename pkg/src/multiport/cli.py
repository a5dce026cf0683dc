"""Command-line front end.

The CLI is a thin client of the HTTP service: every command serializes
its arguments into a request, posts it, and renders the response. By
default it talks to an in-process application instance, so no server
needs to run; pass --server to target a remote deployment instead.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import json
import os
import sys

import click
import httpx

from .experiments import CONVENTIONS, KINDS, UNNORMALIZED
from .generators import FAMILIES
from .netlist import parse_fidelities, render_fidelities
from .service.app import create_app

_NOISE_FIELDS = ("bs_mean", "bs_std", "swap_mean", "swap_std", "loss_mean", "loss_std")


class _Client:
    """HTTP client facade: in-process by default, remote with --server."""

    def __init__(self, server: str | None):
        if server is None:
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            self._client = TestClient(create_app())
        else:
            self._client = httpx.Client(base_url=server, timeout=600.0)

    def post(self, path: str, payload: dict) -> dict:
        response = self._client.post(path, json=payload)
        if response.status_code >= 400:
            try:
                detail = response.json().get("detail", response.text)
            except ValueError:
                detail = response.text
            raise click.UsageError(str(detail))
        return response.json()


@click.group()
@click.option("--server", default=None, metavar="URL",
              help="Base URL of a running service; default is in-process.")
@click.pass_context
def main(ctx: click.Context, server: str | None) -> None:
    """Recursive multiport interferometer circuits: build, verify, simulate."""
    ctx.obj = {"server": server}


def _client(ctx: click.Context) -> _Client:
    return _Client(ctx.obj["server"])


def _modes_value(modes: int | None, items: int | None) -> int:
    if (modes is None) == (items is None):
        raise click.UsageError("specify exactly one of --modes or --items")
    return modes if modes is not None else items


@main.command()
@click.argument("family", type=click.Choice(FAMILIES))
@click.option("--modes", type=int, default=None, help="Mode count d.")
@click.option("--items", type=int, default=None, help="Alias for --modes (search framing).")
@click.option("--solution", type=int, default=None, help="Marked mode for oracle circuits.")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write the netlist here instead of stdout.")
@click.pass_context
def netlist(ctx, family, modes, items, solution, out) -> None:
    """Build a circuit and emit its netlist document."""
    d = _modes_value(modes, items)
    payload = {"family": family, "d": d, "solution": solution}
    doc = _client(ctx).post("/netlist", payload)
    if out:
        with open(out, "w") as handle:
            handle.write(doc["document"])
        click.echo(f"wrote {out}: {doc['element_count']} elements, depth {doc['depth']}")
    else:
        click.echo(doc["document"], nl=False)


@main.command()
@click.argument("family", type=click.Choice(FAMILIES))
@click.option("--modes", type=int, default=None)
@click.option("--items", type=int, default=None)
@click.option("--solution", type=int, default=None)
@click.pass_context
def matrix(ctx, family, modes, items, solution) -> None:
    """Print the transfer matrix (12-digit fixed precision) and unitarity."""
    d = _modes_value(modes, items)
    payload = {"family": family, "d": d, "solution": solution}
    doc = _client(ctx).post("/matrix", payload)
    for re_row, im_row in zip(doc["real"], doc["imag"]):
        cells = [f"{re:+.12f}{im:+.12f}j" for re, im in zip(re_row, im_row)]
        click.echo("  ".join(cells))
    click.echo(f"unitarity residual: {doc['unitarity_residual']:.3e}")


@main.command()
@click.option("--max-dim", type=int, default=32, show_default=True,
              help="Largest mode count exercised by the checks.")
@click.pass_context
def verify(ctx, max_dim) -> None:
    """Run the structural verification suite; exit 1 on any failure."""
    doc = _client(ctx).post("/verify", {"max_dim": max_dim})
    for check in doc["checks"]:
        status = "ok " if check["passed"] else "FAIL"
        click.echo(f"[{status}] {check['name']}: expected {check['expected']}, "
                   f"actual {check['actual']}")
    if not doc["passed"]:
        failures = sum(1 for c in doc["checks"] if not c["passed"])
        click.echo(f"{failures} check(s) failed", err=True)
        sys.exit(1)
    click.echo(f"all {len(doc['checks'])} checks passed")


def _noise_payload(config: str | None, overrides: dict) -> dict:
    noise: dict = {}
    if config:
        with open(config) as handle:
            loaded = json.load(handle)
        unknown = set(loaded) - set(_NOISE_FIELDS)
        if unknown:
            raise click.UsageError(f"unknown noise keys in config: {sorted(unknown)}")
        noise.update(loaded)
    for key, value in overrides.items():
        if value is not None:
            noise[key] = value
    return noise


@main.command()
@click.argument("kind", type=click.Choice(KINDS))
@click.option("--modes", type=int, default=None)
@click.option("--items", type=int, default=None)
@click.option("--trials", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--convention", type=click.Choice(CONVENTIONS), default=UNNORMALIZED,
              show_default=True)
@click.option("--workers", type=int, default=None, envvar="MULTIPORT_WORKERS",
              help="Worker threads (env MULTIPORT_WORKERS); default 1.")
@click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None,
              help="JSON file of noise parameters; flags override it.")
@click.option("--bs-mean", type=float, default=None)
@click.option("--bs-std", type=float, default=None)
@click.option("--swap-mean", type=float, default=None)
@click.option("--swap-std", type=float, default=None)
@click.option("--loss-mean", type=float, default=None)
@click.option("--loss-std", type=float, default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write the results CSV here instead of stdout.")
@click.option("--fidelities-out", type=click.Path(dir_okay=False), default=None,
              help="Also write per-trial fidelities (one-column CSV).")
@click.pass_context
def simulate(ctx, kind, modes, items, trials, seed, convention, workers, config,
             bs_mean, bs_std, swap_mean, swap_std, loss_mean, loss_std,
             out, fidelities_out) -> None:
    """Run a Monte Carlo fidelity experiment and emit a results CSV."""
    d = _modes_value(modes, items)
    overrides = {
        "bs_mean": bs_mean, "bs_std": bs_std,
        "swap_mean": swap_mean, "swap_std": swap_std,
        "loss_mean": loss_mean, "loss_std": loss_std,
    }
    payload = {
        "kind": kind,
        "d": d,
        "trials": trials,
        "seed": seed,
        "convention": convention,
        "workers": workers if workers is not None else 1,
        "noise": _noise_payload(config, overrides),
        "include_fidelities": fidelities_out is not None,
    }
    doc = _client(ctx).post("/simulate", payload)
    if out:
        with open(out, "w") as handle:
            handle.write(doc["results_csv"])
        stats = doc["stats"]
        click.echo(f"wrote {out}: mean {stats['mean']:.4f} std {stats['std']:.4f} "
                   f"median {stats['median']:.4f}")
    else:
        click.echo(doc["results_csv"], nl=False)
    if fidelities_out:
        import numpy as np

        with open(fidelities_out, "w") as handle:
            handle.write(render_fidelities(np.asarray(doc["fidelities"])))


@main.command()
@click.argument("fidelity_file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def histogram(ctx, fidelity_file) -> None:
    """Recompute Freedman-Diaconis bins from a per-trial fidelity file."""
    with open(fidelity_file) as handle:
        try:
            values = parse_fidelities(handle.read())
        except ValueError as exc:
            raise click.UsageError(str(exc))
    if values.size == 0:
        raise click.UsageError("fidelity file has no samples")
    doc = _client(ctx).post("/histogram", {"values": values.tolist()})
    click.echo("bin_lower,bin_width,count")
    for row in doc["bins"]:
        click.echo(f"{row['bin_lower']!r},{row['bin_width']!r},{row['count']}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port) -> None:
    """Run the HTTP service with uvicorn."""
    import uvicorn

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main(auto_envvar_prefix="MULTIPORT")
