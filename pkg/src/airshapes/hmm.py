"""Per-class left-to-right continuous-density HMMs with diagonal-covariance
Gaussian-mixture emissions.

Training is expectation-maximization (Baum-Welch) carried out entirely in
log space, so no per-timestep rescaling is needed. Topology is strict
left-to-right with self-loop and single-step advance; the start distribution
is fixed on the first state. Sequences of equal length are processed as one
batch, which is the common case after arc-length resampling.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.special import logsumexp

from .errors import (
    AirshapesError,
    BankFormatError,
    ConfigError,
    DimensionMismatchError,
    ValidationError,
)
from .features import FeatureDim, FeatureSequence

_LOG_2PI = math.log(2.0 * math.pi)
MAX_BANK_LABELS = 36

DEFAULT_STATES = {"single": 7, "multi": 8}
DEFAULT_GAUSSIANS = {"single": 256, "multi": 64}


@dataclass(frozen=True)
class Gmm:
    """Diagonal-covariance Gaussian mixture for one state."""

    weights: np.ndarray  # (M,)
    means: np.ndarray  # (M, d)
    variances: np.ndarray  # (M, d)

    def __post_init__(self):
        w = np.ascontiguousarray(self.weights, dtype=float)
        mu = np.ascontiguousarray(self.means, dtype=float)
        var = np.ascontiguousarray(self.variances, dtype=float)
        if w.ndim != 1 or mu.ndim != 2 or var.shape != mu.shape or w.shape[0] != mu.shape[0]:
            raise ValidationError("inconsistent mixture shapes")
        if abs(float(w.sum()) - 1.0) > 1e-9:
            raise ValidationError(f"mixture weights sum to {w.sum()!r}, not 1")
        if np.any(w < 0):
            raise ValidationError("negative mixture weight")
        if np.any(var <= 0):
            raise ValidationError("mixture variances must be positive")
        for arr in (w, mu, var):
            arr.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "means", mu)
        object.__setattr__(self, "variances", var)

    @property
    def n_components(self) -> int:
        return self.weights.shape[0]

    @property
    def dim(self) -> int:
        return self.means.shape[1]


def _log_gauss(x: np.ndarray, gmm: Gmm) -> np.ndarray:
    """Per-component log densities; x (..., d) -> (..., M)."""
    d = gmm.dim
    log_det = np.log(gmm.variances).sum(axis=1)
    diff2 = ((x[..., None, :] - gmm.means) ** 2 / gmm.variances).sum(axis=-1)
    return -0.5 * (d * _LOG_2PI + log_det + diff2)


def gmm_log_density(x: np.ndarray | Sequence[float], gmm: Gmm) -> float:
    """Log of the mixture density at x, evaluated stably in log space."""
    x = np.asarray(x, dtype=float)
    if x.shape != (gmm.dim,):
        raise DimensionMismatchError(f"expected vector of dim {gmm.dim}, got {x.shape}")
    with np.errstate(divide="ignore"):
        log_w = np.log(gmm.weights)
    return float(logsumexp(log_w + _log_gauss(x, gmm)))


@dataclass(frozen=True)
class HmmModel:
    """Left-to-right HMM: fixed start state, self-loop or advance-by-one."""

    transitions: np.ndarray  # (S, S)
    emissions: tuple[Gmm, ...]
    dim: FeatureDim

    def __post_init__(self):
        a = np.ascontiguousarray(self.transitions, dtype=float)
        s = a.shape[0]
        if a.shape != (s, s) or s != len(self.emissions):
            raise ValidationError("transition matrix / emission count mismatch")
        mask = np.zeros_like(a, dtype=bool)
        idx = np.arange(s)
        mask[idx, idx] = True
        mask[idx[:-1], idx[:-1] + 1] = True
        if np.any(a[~mask] != 0.0):
            raise ValidationError("transitions outside the left-to-right pattern")
        if np.any(np.abs(a.sum(axis=1) - 1.0) > 1e-9) or np.any(a < 0):
            raise ValidationError("transition rows must lie on the simplex")
        dims = {g.dim for g in self.emissions}
        if dims != {self.dim.size}:
            raise DimensionMismatchError(
                f"emission dims {dims} do not match feature dim {self.dim.size}"
            )
        a.setflags(write=False)
        object.__setattr__(self, "transitions", a)
        object.__setattr__(self, "emissions", tuple(self.emissions))

    @property
    def n_states(self) -> int:
        return self.transitions.shape[0]

    @property
    def start(self) -> np.ndarray:
        pi = np.zeros(self.n_states)
        pi[0] = 1.0
        return pi


def _as_matrix(obs: FeatureSequence | np.ndarray, dim: FeatureDim) -> np.ndarray:
    if isinstance(obs, FeatureSequence):
        if obs.dim is not dim:
            raise DimensionMismatchError(
                f"sequence dim {obs.dim.value} does not match model dim {dim.value}"
            )
        return obs.values
    arr = np.asarray(obs, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != dim.size:
        raise DimensionMismatchError(
            f"expected (T, {dim.size}) observations, got {arr.shape}"
        )
    return arr


def _log_emissions(model: HmmModel, batch: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Log state densities and per-component log joint for a (B, T, d) batch.

    Returns (log_b (B,T,S), log_wn (B,T,S,M_max as ragged list)). Component
    arrays are returned per state to allow differing mixture sizes.
    """
    parts = []
    comp_parts = []
    for gmm in model.emissions:
        with np.errstate(divide="ignore"):
            log_w = np.log(gmm.weights)
        log_wn = log_w + _log_gauss(batch, gmm)  # (B, T, M)
        comp_parts.append(log_wn)
        parts.append(logsumexp(log_wn, axis=-1))
    log_b = np.stack(parts, axis=-1)  # (B, T, S)
    return log_b, comp_parts


def _forward_lattice(log_b: np.ndarray, log_a: np.ndarray, log_pi: np.ndarray) -> np.ndarray:
    b, t_len, s = log_b.shape
    alpha = np.empty((b, t_len, s))
    alpha[:, 0] = log_pi + log_b[:, 0]
    for t in range(1, t_len):
        alpha[:, t] = (
            logsumexp(alpha[:, t - 1][:, :, None] + log_a[None], axis=1) + log_b[:, t]
        )
    return alpha


def _backward_lattice(log_b: np.ndarray, log_a: np.ndarray) -> np.ndarray:
    b, t_len, s = log_b.shape
    beta = np.zeros((b, t_len, s))
    for t in range(t_len - 2, -1, -1):
        beta[:, t] = logsumexp(
            log_a[None] + (log_b[:, t + 1] + beta[:, t + 1])[:, None, :], axis=2
        )
    return beta


def forward_log_likelihood(obs: FeatureSequence | np.ndarray, model: HmmModel) -> float:
    """log P(observations | model) via the log-space forward algorithm."""
    x = _as_matrix(obs, model.dim)
    if x.shape[0] < 1:
        raise ValidationError("observation sequence is empty")
    return float(forward_log_likelihood_batch(x[None], model)[0])


def forward_log_likelihood_batch(batch: np.ndarray, model: HmmModel) -> np.ndarray:
    """Forward log-likelihoods for a (B, T, d) stack of equal-length sequences."""
    batch = np.asarray(batch, dtype=float)
    if batch.ndim != 3 or batch.shape[2] != model.dim.size:
        raise DimensionMismatchError(
            f"expected (B, T, {model.dim.size}) batch, got {batch.shape}"
        )
    with np.errstate(divide="ignore"):
        log_a = np.log(model.transitions)
        log_pi = np.log(model.start)
    log_b, _ = _log_emissions(model, batch)
    alpha = _forward_lattice(log_b, log_a, log_pi)
    return logsumexp(alpha[:, -1], axis=1)


# --- initialization -------------------------------------------------------------


def _kmeans(vectors: np.ndarray, k: int, rng: np.random.Generator, max_iter: int = 20):
    """Plain seeded k-means; deterministic given the generator state."""
    n = vectors.shape[0]
    centers = vectors[rng.choice(n, size=k, replace=False)].copy()
    assign = np.full(n, -1)
    for _ in range(max_iter):
        d2 = ((vectors[:, None, :] - centers[None]) ** 2).sum(axis=2)
        new_assign = d2.argmin(axis=1)
        # Reseed empty clusters on far points, each stolen at most once per
        # pass so one point cannot leave another cluster empty again.
        taken: set[int] = set()
        for c in range(k):
            if not np.any(new_assign == c):
                residual = d2[np.arange(n), new_assign].copy()
                if taken:
                    residual[list(taken)] = -np.inf
                far = int(residual.argmax())
                centers[c] = vectors[far]
                new_assign[far] = c
                taken.add(far)
        if np.array_equal(new_assign, assign):
            break
        assign = new_assign
        for c in range(k):
            members = vectors[assign == c]
            if len(members):
                centers[c] = members.mean(axis=0)
    return centers, assign


def _gmm_from_clusters(
    vectors: np.ndarray, assign: np.ndarray, k: int, variance_floor: float
) -> Gmm:
    d = vectors.shape[1]
    weights, means, variances = [], [], []
    for c in range(k):
        members = vectors[assign == c]
        if not len(members):  # duplicate-heavy data can defeat reseeding
            continue
        weights.append(members.shape[0] / vectors.shape[0])
        means.append(members.mean(axis=0))
        variances.append(np.maximum(members.var(axis=0), variance_floor))
    w = np.array(weights)
    return Gmm(w / w.sum(), np.array(means).reshape(len(w), d), np.array(variances).reshape(len(w), d))


def init_model(
    seqs: Sequence[FeatureSequence | np.ndarray],
    states: int,
    gaussians: int,
    seed: int | Sequence[int] = 0,
    variance_floor: float = 1e-4,
) -> HmmModel:
    """Initialize by uniform-duration segmentation plus per-state k-means.

    Each sequence is cut into ``states`` contiguous chunks; chunk s of every
    sequence feeds state s. Mixture sizes shrink (with a warning) when a
    state has fewer than 2 vectors per requested Gaussian.
    """
    if states < 1 or gaussians < 1:
        raise ConfigError("states and gaussians must be >= 1")
    if not seqs:
        raise ConfigError("need at least one training sequence")
    dim = seqs[0].dim if isinstance(seqs[0], FeatureSequence) else None
    if dim is None:
        width = np.asarray(seqs[0]).shape[1]
        dim = {7: FeatureDim.F7, 12: FeatureDim.F12, 6: FeatureDim.MOMENTS6}.get(width)
        if dim is None:
            raise DimensionMismatchError(f"no feature dim tag for width {width}")
    mats = [_as_matrix(s, dim) for s in seqs]
    rng = np.random.default_rng(seed)

    per_state: list[list[np.ndarray]] = [[] for _ in range(states)]
    for mat in mats:
        for s, chunk in enumerate(np.array_split(mat, states)):
            if chunk.size:
                per_state[s].append(chunk)

    emissions = []
    for s in range(states):
        if not per_state[s]:
            raise ConfigError(f"state {s} received no vectors; too many states")
        vectors = np.concatenate(per_state[s])
        m_eff = min(gaussians, max(1, vectors.shape[0] // 2))
        if m_eff < gaussians:
            warnings.warn(
                f"state {s}: shrinking mixture from {gaussians} to {m_eff} "
                f"components ({vectors.shape[0]} vectors available)",
                stacklevel=2,
            )
        _, assign = _kmeans(vectors, m_eff, rng)
        emissions.append(_gmm_from_clusters(vectors, assign, m_eff, variance_floor))

    a = np.zeros((states, states))
    for i in range(states - 1):
        a[i, i] = 0.6
        a[i, i + 1] = 0.4
    a[states - 1, states - 1] = 1.0
    return HmmModel(a, tuple(emissions), dim)


# --- Baum-Welch training ----------------------------------------------------------


@dataclass(frozen=True)
class TrainConfig:
    max_iter: int = 15
    tol: float = 1e-4
    variance_floor: float = 1e-4


def _group_by_length(mats: list[np.ndarray]) -> dict[int, tuple[np.ndarray, list[int]]]:
    groups: dict[int, list[int]] = {}
    for i, m in enumerate(mats):
        groups.setdefault(m.shape[0], []).append(i)
    return {
        t: (np.stack([mats[i] for i in idx]), idx) for t, idx in sorted(groups.items())
    }


def _em_step(model: HmmModel, groups):
    """One E step: accumulates sufficient statistics and the current LL."""
    s = model.n_states
    d = model.dim.size
    with np.errstate(divide="ignore"):
        log_a = np.log(model.transitions)
        log_pi = np.log(model.start)

    trans_num = np.zeros((s, s))
    occ = np.zeros(s)
    comp_occ = [np.zeros(g.n_components) for g in model.emissions]
    mean_num = [np.zeros((g.n_components, d)) for g in model.emissions]
    sq_num = [np.zeros((g.n_components, d)) for g in model.emissions]

    total_ll = 0.0
    n_seqs = sum(len(idx) for _, idx in groups.values())
    seq_ll = np.empty(n_seqs)

    for _, (batch, idx) in groups.items():
        log_b, comp_parts = _log_emissions(model, batch)
        alpha = _forward_lattice(log_b, log_a, log_pi)
        beta = _backward_lattice(log_b, log_a)
        ll = logsumexp(alpha[:, -1], axis=1)  # (B,)
        seq_ll[idx] = ll
        total_ll += float(ll.sum())

        log_gamma = alpha + beta - ll[:, None, None]
        gamma = np.exp(log_gamma)  # (B, T, S)
        occ += gamma.sum(axis=(0, 1))

        if batch.shape[1] > 1:
            log_xi = (
                alpha[:, :-1, :, None]
                + log_a[None, None]
                + (log_b[:, 1:] + beta[:, 1:])[:, :, None, :]
                - ll[:, None, None, None]
            )
            trans_num += np.exp(log_xi).sum(axis=(0, 1))

        for j, log_wn in enumerate(comp_parts):
            log_r = log_gamma[:, :, j, None] + log_wn - log_b[:, :, j, None]
            r = np.exp(log_r)  # (B, T, M)
            comp_occ[j] += r.sum(axis=(0, 1))
            mean_num[j] += np.einsum("btm,btd->md", r, batch)
            sq_num[j] += np.einsum("btm,btd->md", r, batch**2)

    return model, total_ll, seq_ll, trans_num, occ, comp_occ, mean_num, sq_num


def _apply_m_step(
    model: HmmModel,
    trans_num: np.ndarray,
    occ: np.ndarray,
    comp_occ,
    mean_num,
    sq_num,
    variance_floor: float,
) -> HmmModel:
    s = model.n_states
    a = model.transitions.copy()
    row_sums = trans_num.sum(axis=1)
    for i in range(s):
        if row_sums[i] > 0:
            a[i] = trans_num[i] / row_sums[i]

    emissions = []
    for j, gmm in enumerate(model.emissions):
        if occ[j] <= 1e-12:
            emissions.append(gmm)  # state never visited; keep parameters
            continue
        w = comp_occ[j] / comp_occ[j].sum()
        means = gmm.means.copy()
        variances = gmm.variances.copy()
        for k in range(gmm.n_components):
            if comp_occ[j][k] <= 1e-12:
                continue
            means[k] = mean_num[j][k] / comp_occ[j][k]
            ex2 = sq_num[j][k] / comp_occ[j][k]
            variances[k] = np.maximum(ex2 - means[k] ** 2, variance_floor)
        emissions.append(Gmm(w, means, variances))
    return HmmModel(a, tuple(emissions), model.dim)


def baum_welch(
    model: HmmModel,
    seqs: Sequence[FeatureSequence | np.ndarray],
    config: TrainConfig = TrainConfig(),
) -> tuple[HmmModel, list[float]]:
    """Re-estimate until convergence; returns the model and the per-iteration
    total log-likelihood history (each value measured before its update)."""
    if not seqs:
        raise ConfigError("no training sequences")
    mats = [_as_matrix(s, model.dim) for s in seqs]
    groups = _group_by_length(mats)
    history: list[float] = []
    current = model
    for _ in range(config.max_iter):
        (_, total_ll, seq_ll, trans_num, occ, comp_occ, mean_num, sq_num) = _em_step(
            current, groups
        )
        if not np.all(np.isfinite(seq_ll)):
            bad = int(np.flatnonzero(~np.isfinite(seq_ll))[0])
            raise AirshapesError(
                f"log-likelihood underflow on training sequence {bad}"
            )
        if history and total_ll - history[-1] < config.tol * max(1.0, abs(history[-1])):
            history.append(total_ll)
            break
        history.append(total_ll)
        current = _apply_m_step(
            current, trans_num, occ, comp_occ, mean_num, sq_num, config.variance_floor
        )
    return current, history


def train_model(
    model: HmmModel,
    seqs: Sequence[FeatureSequence | np.ndarray],
    config: TrainConfig = TrainConfig(),
) -> HmmModel:
    """Baum-Welch re-estimation preserving the left-to-right zero pattern."""
    trained, _ = baum_welch(model, seqs, config)
    return trained


# --- classifier bank ---------------------------------------------------------------


@dataclass(frozen=True)
class TrainingSnapshot:
    """Provenance of how a bank was trained."""

    states: int
    gaussians: int
    max_iter: int
    tol: float
    variance_floor: float
    seed: int
    feature_set: str = ""
    gesture_type: str | None = None

    def to_obj(self) -> dict:
        return {
            "states": self.states,
            "gaussians": self.gaussians,
            "max_iter": self.max_iter,
            "tol": self.tol,
            "variance_floor": self.variance_floor,
            "seed": self.seed,
            "feature_set": self.feature_set,
            "gesture_type": self.gesture_type,
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "TrainingSnapshot":
        return cls(**obj)


@dataclass(frozen=True)
class ClassifierBank:
    """Label-to-model map; all models share one feature dimensionality."""

    models: Mapping[str, HmmModel]
    config: TrainingSnapshot
    dim: FeatureDim = field(init=False)

    def __post_init__(self):
        models = dict(sorted(self.models.items()))
        if not models:
            raise ConfigError("classifier bank cannot be empty")
        if len(models) > MAX_BANK_LABELS:
            raise ValidationError(f"bank exceeds {MAX_BANK_LABELS} labels")
        dims = {m.dim for m in models.values()}
        if len(dims) != 1:
            raise DimensionMismatchError("bank models disagree on feature dim")
        object.__setattr__(self, "models", models)
        object.__setattr__(self, "dim", dims.pop())

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.models.keys())


@dataclass(frozen=True)
class RecognitionResult:
    """Ranked labels with scores (bigger is better), margin, reject flag."""

    ranking: tuple[tuple[str, float], ...]
    margin: float
    rejected: bool = False

    def __post_init__(self):
        scores = [s for _, s in self.ranking]
        if any(a < b for a, b in zip(scores, scores[1:])):
            raise ValidationError("ranking must be sorted descending")
        if self.margin < 0:
            raise ValidationError("margin must be nonnegative")

    @property
    def best(self) -> str:
        return self.ranking[0][0]


def recognize(obs: FeatureSequence | np.ndarray, bank: ClassifierBank) -> RecognitionResult:
    """Score against every model; rank descending, ties broken by label."""
    x = _as_matrix(obs, bank.dim)
    scored = [
        (label, forward_log_likelihood(x, model)) for label, model in bank.models.items()
    ]
    scored.sort(key=lambda item: (-item[1], item[0]))
    margin = scored[0][1] - scored[1][1] if len(scored) > 1 else 0.0
    return RecognitionResult(tuple(scored), margin=margin, rejected=False)


def apply_rejection(result: RecognitionResult, threshold: float) -> RecognitionResult:
    """Reject when the best-vs-second score margin falls below the threshold."""
    if threshold < 0:
        raise ConfigError("rejection threshold must be >= 0")
    return replace(result, rejected=result.margin < threshold)


def train_classifier_bank(
    seqs_by_label: Mapping[str, Sequence[FeatureSequence | np.ndarray]],
    states: int,
    gaussians: int,
    seed: int = 0,
    config: TrainConfig = TrainConfig(),
    feature_set: str = "",
    gesture_type: str | None = None,
) -> ClassifierBank:
    """Train one model per label; per-label seeds derive from (seed, index)."""
    models: dict[str, HmmModel] = {}
    for idx, label in enumerate(sorted(seqs_by_label)):
        seqs = list(seqs_by_label[label])
        model = init_model(
            seqs, states, gaussians, seed=[seed, idx], variance_floor=config.variance_floor
        )
        models[label], _ = baum_welch(model, seqs, config)
    snapshot = TrainingSnapshot(
        states=states,
        gaussians=gaussians,
        max_iter=config.max_iter,
        tol=config.tol,
        variance_floor=config.variance_floor,
        seed=seed,
        feature_set=feature_set,
        gesture_type=gesture_type,
    )
    return ClassifierBank(models, snapshot)


# --- serialization -----------------------------------------------------------------

_BANK_FORMAT = "airshapes-bank"
_BANK_VERSION = 1


def save_bank(bank: ClassifierBank) -> bytes:
    """Serialize to versioned JSON; floats round-trip exactly."""
    models = {}
    for label, model in bank.models.items():
        models[label] = {
            "states": model.n_states,
            "transitions": model.transitions.tolist(),
            "start": model.start.tolist(),
            "emissions": [
                {
                    "weights": g.weights.tolist(),
                    "means": g.means.tolist(),
                    "variances": g.variances.tolist(),
                }
                for g in model.emissions
            ],
        }
    doc = {
        "format": _BANK_FORMAT,
        "version": _BANK_VERSION,
        "dim": bank.dim.value,
        "config": bank.config.to_obj(),
        "models": models,
    }
    return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode("utf-8")


def load_bank(data: bytes | str) -> ClassifierBank:
    """Parse a serialized bank; corrupt or mismatched streams raise."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BankFormatError(f"corrupt bank stream: {exc.msg}") from exc
    if not isinstance(doc, dict) or doc.get("format") != _BANK_FORMAT:
        raise BankFormatError("not a classifier bank stream")
    if doc.get("version") != _BANK_VERSION:
        raise BankFormatError(
            f"unsupported bank version {doc.get('version')!r} (expected {_BANK_VERSION})"
        )
    try:
        dim = FeatureDim(doc["dim"])
        config = TrainingSnapshot.from_obj(doc["config"])
        models = {}
        for label, m in doc["models"].items():
            emissions = tuple(
                Gmm(
                    np.array(g["weights"], dtype=float),
                    np.array(g["means"], dtype=float),
                    np.array(g["variances"], dtype=float),
                )
                for g in m["emissions"]
            )
            models[label] = HmmModel(np.array(m["transitions"], dtype=float), emissions, dim)
    except (KeyError, TypeError, ValueError, ValidationError) as exc:
        raise BankFormatError(f"malformed bank payload: {exc}") from exc
    return ClassifierBank(models, config)


def save_bank_file(bank: ClassifierBank, path) -> None:
    with open(path, "wb") as fh:
        fh.write(save_bank(bank))


def load_bank_file(path) -> ClassifierBank:
    with open(path, "rb") as fh:
        return load_bank(fh.read())
