"""Seeded synthetic datasets with injected co-monotone attribute groups."""

from __future__ import annotations

import io

import numpy as np

from .dataset import Dataset
from .errors import InvalidParameter
from .patterns import Direction, GradualItem, GradualPattern, canonicalize


def generate(rows: int, attrs: int, signal_groups: int = 2, noise: float = 0.1,
             seed: int = 0):
    """Build a dataset and the list of injected group patterns.

    Attribute ``j`` belongs to group ``j % signal_groups``. Each group has a
    latent score, evenly spaced on ``[0, 1]``; group 0 is monotone in row
    order (so it also shows up under the temporal semantics), the others follow
    a seeded hidden permutation of the rows, which keeps groups independent of
    each other. Every attribute is ``offset + scale * (+-latent + noise * sd * e)``
    with Gaussian ``e``; the first attribute of a group always increases with
    the latent, the others pick a random direction. With ``signal_groups=0``
    all attributes are independent noise.
    """
    if rows < 2 or attrs < 1:
        raise InvalidParameter("need rows >= 2 and attrs >= 1")
    if noise < 0:
        raise InvalidParameter("noise must be >= 0")
    if signal_groups < 0 or signal_groups > attrs:
        raise InvalidParameter("signal_groups must be in [0, attrs]")

    rng = np.random.default_rng(seed)
    base = np.linspace(0.0, 1.0, rows)
    spread = float(base.std(ddof=1))
    latents = []
    for g in range(signal_groups):
        latents.append(base.copy() if g == 0 else base[rng.permutation(rows)])

    cols = np.empty((rows, attrs))
    members: dict[int, list[GradualItem]] = {g: [] for g in range(signal_groups)}
    for j in range(attrs):
        offset = rng.uniform(5.0, 10.0)
        scale = rng.uniform(0.5, 2.0)
        if signal_groups == 0:
            cols[:, j] = offset + scale * rng.standard_normal(rows) * spread
            continue
        g = j % signal_groups
        sign = 1.0 if not members[g] else rng.choice((-1.0, 1.0))
        eps = rng.standard_normal(rows)
        cols[:, j] = offset + scale * (sign * latents[g] + noise * spread * eps)
        members[g].append(GradualItem(j, Direction.GEQ if sign > 0 else Direction.LEQ))

    names = tuple(f"x{j + 1}" for j in range(attrs))
    planted = [canonicalize(GradualPattern(items)) for items in members.values() if items]
    return Dataset(names, cols), planted


def generate_csv(rows: int, attrs: int, signal_groups: int = 2, noise: float = 0.1,
                 seed: int = 0) -> str:
    d, _ = generate(rows, attrs, signal_groups, noise, seed)
    out = io.StringIO()
    out.write(",".join(d.attribute_names) + "\n")
    for r in d.rows:
        out.write(",".join(format(v, ".10g") for v in r) + "\n")
    return out.getvalue()
