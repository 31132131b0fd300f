"""Request/response service for the companion UI.

Endpoints: POST /classify, GET /labels, POST /render, GET /healthz, plus
static assets for the browser client. Classification is read-only against
the banks loaded at startup; request frames use the exact recording-line
schema.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping

from fastapi import Body, FastAPI, HTTPException
from fastapi.responses import Response
from fastapi.staticfiles import StaticFiles

from .errors import AirshapesError
from .evaluation import prepare_sequence
from .hmm import ClassifierBank, apply_rejection, recognize
from .render import (
    RenderKind,
    RenderParams,
    RenderSpec,
    SizeClass,
    default_kind,
    extract_params,
    render,
    size_class,
)
from .tracking import (
    MIN_GESTURE_FRAMES,
    Frame,
    GestureSample,
    GestureType,
    Point3,
    Recording,
    RecordingSource,
    Trajectory,
    parse_frame_obj,
)
from .trajectory import spot_gestures

DEFAULT_RESAMPLE_POINTS = 64


def classify_sample(
    sample: GestureSample,
    banks: Mapping[GestureType, ClassifierBank],
    top_n: int = 5,
    rejection_threshold: float = 0.0,
    resample_points: int = DEFAULT_RESAMPLE_POINTS,
) -> dict:
    """Classify one spotted sample against the bank matching its type."""
    bank = banks.get(sample.gesture_type)
    if bank is None:
        raise AirshapesError(
            f"no bank loaded for {sample.gesture_type.value}-finger gestures"
        )
    feature_set = bank.config.feature_set or (
        "f7" if sample.gesture_type is GestureType.SINGLE_FINGER else "f12"
    )
    obs = prepare_sequence(sample, feature_set, resample_points, resample_points)
    result = recognize(obs, bank)
    if rejection_threshold > 0:
        result = apply_rejection(result, rejection_threshold)
    params = extract_params(sample)
    kind = default_kind(result.best, sample.gesture_type) if not result.rejected else None
    payload = {
        "gesture_type": sample.gesture_type.value,
        "feature_set": feature_set,
        "ranking": [[label, score] for label, score in result.ranking[:top_n]],
        "margin": result.margin,
        "rejected": result.rejected,
        "params": params.to_obj(),
    }
    if kind is not None:
        payload["render_spec"] = {
            "label": result.best,
            "kind": kind.value,
            "params": params.to_obj(),
        }
    return payload


def parse_render_request(obj: dict) -> RenderSpec:
    try:
        label = obj["label"]
        kind = RenderKind(obj.get("kind", "mesh"))
        p = obj.get("params", {})
        params = RenderParams(
            height=float(p.get("height", 100.0)),
            diameter=float(p.get("diameter", 80.0)),
            length=float(p.get("length", 100.0)),
            width=float(p.get("width", 100.0)),
            depth=float(p.get("depth", p.get("height", 100.0))),
            size_class=SizeClass(
                p.get("size_class", size_class(float(p.get("height", 100.0))).value)
            ),
            diameter_is_fallback=bool(p.get("diameter_is_fallback", False)),
        )
        return RenderSpec(label=label, params=params, kind=kind)
    except (KeyError, ValueError, TypeError) as exc:
        raise AirshapesError(f"bad render request: {exc}") from exc


def _spot_from_frames(body: dict) -> list[GestureSample]:
    frames_obj = body.get("frames")
    if not isinstance(frames_obj, list) or not frames_obj:
        raise HTTPException(status_code=400, detail="'frames' must be a non-empty list")
    if len(frames_obj) < MIN_GESTURE_FRAMES:
        raise HTTPException(
            status_code=400,
            detail=f"need at least {MIN_GESTURE_FRAMES} frames, got {len(frames_obj)}",
        )
    try:
        frames: list[Frame] = [
            parse_frame_obj(obj, i + 1) for i, obj in enumerate(frames_obj)
        ]
        recording = Recording(tuple(frames), RecordingSource.LIVE)
        samples = spot_gestures(recording)
    except AirshapesError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    if not samples:
        raise HTTPException(
            status_code=400,
            detail="no gesture spotted; check the capture-gate hand states",
        )
    return samples


def _sample_from_trajectory(body: dict) -> GestureSample:
    """Pre-spotted input: a raw point list plus an explicit gesture type."""
    pts = body.get("trajectory")
    if not isinstance(pts, list) or len(pts) < MIN_GESTURE_FRAMES:
        raise HTTPException(
            status_code=400,
            detail=f"'trajectory' must list at least {MIN_GESTURE_FRAMES} points",
        )
    try:
        gtype = GestureType(body.get("gesture_type", "single"))
        rows = []
        for i, p in enumerate(pts):
            if not isinstance(p, (list, tuple)) or len(p) not in (3, 4):
                raise AirshapesError(f"point {i} must be [x, y, z] or [x, y, z, t]")
            t = float(p[3]) if len(p) == 4 else float(i) * 10.0
            rows.append(Point3(float(p[0]), float(p[1]), float(p[2]), t))
        trajectory = Trajectory.from_points(rows)
    except (AirshapesError, TypeError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return GestureSample(
        id="request", label=None, gesture_type=gtype, trajectory=trajectory
    )


def create_app(
    banks: Mapping[GestureType, ClassifierBank],
    assets_dir: str | Path | None = None,
    resample_points: int = DEFAULT_RESAMPLE_POINTS,
) -> FastAPI:
    app = FastAPI(title="airshapes", version="0.1.0")

    @app.get("/healthz")
    def healthz() -> dict:
        return {
            "status": "ok",
            "banks": {
                gtype.value: len(bank.labels) for gtype, bank in banks.items()
            },
        }

    @app.get("/labels")
    def labels() -> dict:
        return {
            "labels": [
                {"label": label, "type": gtype.value}
                for gtype, bank in sorted(banks.items(), key=lambda kv: kv[0].value)
                for label in bank.labels
            ]
        }

    @app.post("/classify")
    def classify(body: dict = Body(...)) -> dict:
        if "trajectory" in body:
            samples = [_sample_from_trajectory(body)]
        else:
            samples = _spot_from_frames(body)
        options = body.get("options") or {}
        try:
            payload = classify_sample(
                samples[0],
                banks,
                top_n=int(options.get("top_n", 5)),
                rejection_threshold=float(options.get("rejection_threshold", 0.0)),
                resample_points=resample_points,
            )
        except AirshapesError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        payload["segments_spotted"] = len(samples)
        return payload

    @app.post("/render")
    def render_endpoint(body: dict = Body(...)):
        try:
            spec = parse_render_request(body)
            data = render(spec)
        except AirshapesError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        media = "image/svg+xml" if spec.kind is RenderKind.VECTOR2D else "text/plain"
        return Response(content=data, media_type=media)

    if assets_dir is not None:
        app.mount("/", StaticFiles(directory=str(assets_dir), html=True), name="ui")
    return app
