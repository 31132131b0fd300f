"""Command-line entry points: synth, train, classify, evaluate, render, serve."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import __version__
from .errors import AirshapesError
from .evaluation import (
    ExperimentConfig,
    emit_report_plots,
    prepare_sequence,
    run_experiment,
    write_report,
)
from .hmm import (
    DEFAULT_GAUSSIANS,
    DEFAULT_STATES,
    TrainConfig,
    load_bank_file,
    save_bank_file,
    train_classifier_bank,
)
from .render import (
    RenderKind,
    RenderParams,
    RenderSpec,
    SizeClass,
    default_kind,
    size_class,
    write_artifact,
)
from .service import classify_sample, create_app
from .synth import NoiseSpec, generate_dataset, shape_specs
from .tracking import GestureType, load_recording_file, read_manifest
from .trajectory import spot_gestures


@click.group()
@click.version_option(__version__)
def main():
    """Gesture recognition and shape rendering toolkit."""


def _provenance(**kwargs) -> dict:
    return {"tool": f"airshapes {__version__}", **kwargs}


@main.command()
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--per-class", default=15, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option(
    "--type", "gesture_type", type=click.Choice(["single", "multi", "all"]),
    default="all", show_default=True,
)
@click.option("--classes", default=None, help="Comma-separated label subset.")
@click.option("--jitter", default=2.0, show_default=True, help="Jitter sigma in mm.")
@click.option("--speed-warp", default=0.2, show_default=True)
@click.option("--phase-jitter", default=0.05, show_default=True)
@click.option("--zero-noise", is_flag=True, help="Disable all noise sources.")
@click.option("--users", default=5, show_default=True)
def synth(out_dir, per_class, seed, gesture_type, classes, jitter, speed_warp,
          phase_jitter, zero_noise, users):
    """Generate a synthetic gesture dataset plus manifest."""
    gtype = None if gesture_type == "all" else GestureType(gesture_type)
    specs = shape_specs(gtype)
    if classes:
        wanted = {c.strip() for c in classes.split(",")}
        specs = [s for s in specs if s.label in wanted]
        missing = wanted - {s.label for s in specs}
        if missing:
            raise click.ClickException(f"unknown labels: {sorted(missing)}")
    noise = NoiseSpec.none() if zero_noise else NoiseSpec(jitter, speed_warp, phase_jitter)
    manifest = generate_dataset(specs, per_class, noise, seed, out_dir, n_users=users)
    click.echo(f"wrote {len(specs) * per_class} recordings, manifest at {manifest}")


@main.command()
@click.option("--manifest", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option(
    "--type", "gesture_type", type=click.Choice(["single", "multi"]), required=True
)
@click.option(
    "--features", type=click.Choice(["raw", "f7", "f12", "moments6"]), default=None,
    help="Defaults to f7 for single, f12 for multi.",
)
@click.option("--states", default=None, type=int,
              help="Defaults per gesture type: 7 single / 8 multi.")
@click.option("--gaussians", default=None, type=int,
              help="Defaults per gesture type: 256 single / 64 multi, shrunk "
                   "automatically when training data is scarce.")
@click.option("--max-iter", default=12, show_default=True)
@click.option("--resample-points", default=64, show_default=True)
@click.option("--seed", default=0, show_default=True)
def train(manifest, out_path, gesture_type, features, states, gaussians, max_iter,
          resample_points, seed):
    """Train a classifier bank from a dataset manifest."""
    from .evaluation import load_dataset

    gtype = GestureType(gesture_type)
    features = features or ("f7" if gtype is GestureType.SINGLE_FINGER else "f12")
    states = states or DEFAULT_STATES[gtype.value]
    gaussians = gaussians or DEFAULT_GAUSSIANS[gtype.value]
    if features == "moments6":
        states = 1
    dataset = [s for s in load_dataset(manifest) if s.gesture_type is gtype]
    if not dataset:
        raise click.ClickException(f"manifest has no {gesture_type}-finger samples")
    by_label: dict[str, list] = {}
    for item in dataset:
        seq = prepare_sequence(item.sample, features, resample_points, resample_points)
        by_label.setdefault(item.label, []).append(seq)
    bank = train_classifier_bank(
        by_label,
        states=states,
        gaussians=gaussians,
        seed=seed,
        config=TrainConfig(max_iter=max_iter),
        feature_set=features,
        gesture_type=gtype.value,
    )
    save_bank_file(bank, out_path)
    click.echo(f"trained {len(bank.labels)} models -> {out_path}")


@main.command()
@click.option("--bank", "bank_paths", multiple=True, required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Bank file; repeat for single+multi.")
@click.option("--recording", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--top", "top_n", default=5, show_default=True)
@click.option("--reject-threshold", default=0.0, show_default=True)
@click.option("--resample-points", default=64, show_default=True)
@click.option("--out", "out_path", default=None, type=click.Path(dir_okay=False),
              help="Also save the JSON response here.")
@click.option("--render-out", default=None, type=click.Path(file_okay=False),
              help="Render the top label of each segment into this directory.")
def classify(bank_paths, recording, top_n, reject_threshold, resample_points,
             out_path, render_out):
    """Spot and classify every gesture in a recording file."""
    banks = {}
    for path in bank_paths:
        bank = load_bank_file(path)
        gtype = GestureType(bank.config.gesture_type or "single")
        banks[gtype] = bank
    rec = load_recording_file(recording)
    samples = spot_gestures(rec)
    if not samples:
        raise click.ClickException("no gestures spotted in the recording")
    responses = []
    for sample in samples:
        try:
            payload = classify_sample(
                sample, banks, top_n=top_n,
                rejection_threshold=reject_threshold,
                resample_points=resample_points,
            )
        except AirshapesError as exc:
            raise click.ClickException(str(exc))
        payload["segment_id"] = sample.id
        responses.append(payload)
        if render_out and "render_spec" in payload:
            from .service import parse_render_request

            spec = parse_render_request(payload["render_spec"])
            path = write_artifact(render_out, sample.id, spec,
                                  provenance=_provenance(recording=str(recording)))
            payload["artifact"] = str(path)
    doc = {
        "provenance": _provenance(
            recording=str(recording), banks=sorted(str(p) for p in bank_paths),
            top_n=top_n, reject_threshold=reject_threshold,
        ),
        "results": responses,
    }
    text = json.dumps(doc, indent=2, sort_keys=True)
    click.echo(text)
    if out_path:
        Path(out_path).write_text(text + "\n", encoding="utf-8")


@main.command()
@click.option("--config", "config_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--plots", "plots_dir", default=None, type=click.Path(file_okay=False))
def evaluate(config_path, out_path, plots_dir):
    """Run a cross-validation experiment from a JSON config."""
    config = ExperimentConfig.from_file(config_path)
    report = run_experiment(config)
    write_report(report, out_path)
    acc = report["aggregate"]["accuracy"]
    click.echo(f"aggregate accuracy {acc:.2f}% -> {out_path}")
    if plots_dir:
        for path in emit_report_plots(report, plots_dir):
            click.echo(f"plot: {path}")


@main.command(name="render")
@click.option("--label", required=True)
@click.option("--kind", type=click.Choice(["mesh", "vector"]), default=None,
              help="Defaults by label dimensionality.")
@click.option("--height", default=120.0, show_default=True)
@click.option("--diameter", default=80.0, show_default=True)
@click.option("--length", default=None, type=float)
@click.option("--width", default=None, type=float)
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--id", "sample_id", default="manual", show_default=True)
def render_cmd(label, kind, height, diameter, length, width, out_dir, sample_id):
    """Render a shape directly from parameters."""
    params = RenderParams(
        height=height,
        diameter=diameter,
        length=length if length is not None else diameter,
        width=width if width is not None else diameter,
        depth=height,
        size_class=size_class(max(height, diameter)),
    )
    if kind is None:
        try:
            resolved = default_kind(label, GestureType.MULTI_FINGER)
        except AirshapesError as exc:
            raise click.ClickException(str(exc))
    else:
        resolved = RenderKind.MESH3D if kind == "mesh" else RenderKind.VECTOR2D
    try:
        spec = RenderSpec(label=label, params=params, kind=resolved)
        path = write_artifact(out_dir, sample_id, spec, provenance=_provenance())
    except AirshapesError as exc:
        raise click.ClickException(str(exc))
    click.echo(f"wrote {path}")


@main.command()
@click.option("--bank", "bank_paths", multiple=True, required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
@click.option("--assets", default=None, type=click.Path(file_okay=False, exists=True))
@click.option("--resample-points", default=64, show_default=True)
def serve(bank_paths, host, port, assets, resample_points):
    """Serve the classify/render API (and the UI when --assets is given)."""
    import uvicorn

    banks = {}
    for path in bank_paths:
        bank = load_bank_file(path)
        gtype = GestureType(bank.config.gesture_type or "single")
        banks[gtype] = bank
    app = create_app(banks, assets_dir=assets, resample_points=resample_points)
    click.echo(f"serving {sum(len(b.labels) for b in banks.values())} labels on {host}:{port}")
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    sys.exit(main())
