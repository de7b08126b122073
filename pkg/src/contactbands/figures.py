"""Reference-figure reproduction: data files plus rendered plots.

Each figure writes a deterministic CSV, a JSON sidecar with the generating
parameters, and (unless disabled) a PNG rendering next to them.

fig1   : bound-state pitchfork, Re(alpha) = -1, beta = 1, Im(alpha) in [0, 2]
fig2a  : narrow-band PT pair, varepsilon^2 = 1.2, unbroken side  (all real)
fig2b/c: varepsilon^2 = 0.5, unbroken side (partially real; b = real part,
         c = imaginary part of the same band pair)
fig2d  : varepsilon^2 = 1.2, broken side    (conjugate pair at every k)

The band-pair figures use bandwidth scale W = 1 and period ell = 1, with a
reference decay rate kappa_bar = 1; each band is offset by the mean of its
real part so the pair is centered about zero energy (recorded in the sidecar).
"""
from __future__ import annotations

import math
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import emit
from .boundstates import pitchfork_scan
from .errors import DomainError
from .kronig import narrowband_displacements

Pathish = Union[str, Path]

FIGURE_KEYS = ("fig1", "fig2a", "fig2b", "fig2c", "fig2d")

_PITCHFORK = {"alpha_r": -1.0, "beta": 1.0,
              "alpha_i_start": 0.0, "alpha_i_stop": 2.0, "n": 401}
_BAND_W = 1.0
_BAND_ELL = 1.0
_BAND_KBAR = 1.0
_BAND_N = 201

_FIG2 = {
    "fig2a": {"varepsilon_sq": 1.2, "above": False, "component": "re"},
    "fig2b": {"varepsilon_sq": 0.5, "above": False, "component": "re"},
    "fig2c": {"varepsilon_sq": 0.5, "above": False, "component": "im"},
    "fig2d": {"varepsilon_sq": 1.2, "above": True, "component": "im"},
}


def _pitchfork_table() -> Tuple[List[Tuple], dict]:
    cfg = _PITCHFORK
    grid = np.linspace(cfg["alpha_i_start"], cfg["alpha_i_stop"], cfg["n"])
    points = pitchfork_scan(cfg["alpha_r"], cfg["beta"], grid)
    return emit.pitchfork_rows(points), dict(cfg)


def _fig2_table(key: str) -> Tuple[List[Tuple], dict]:
    cfg = _FIG2[key]
    ks = np.linspace(-math.pi / _BAND_ELL, math.pi / _BAND_ELL, _BAND_N)
    e_plus = []
    e_minus = []
    for k in ks:
        dp, dm = narrowband_displacements(_BAND_W, cfg["varepsilon_sq"],
                                          cfg["above"], float(k), _BAND_ELL)
        center = -0.5 * _BAND_KBAR ** 2
        e_plus.append(center - _BAND_KBAR * dp)
        e_minus.append(center - _BAND_KBAR * dm)
    off_p = float(np.mean([e.real for e in e_plus]))
    off_m = float(np.mean([e.real for e in e_minus]))
    rows = [(float(k), ep.real - off_p, ep.imag, em.real - off_m, em.imag)
            for k, ep, em in zip(ks, e_plus, e_minus)]
    meta = {
        "w": _BAND_W, "ell": _BAND_ELL, "kappa_bar": _BAND_KBAR,
        "varepsilon_sq": cfg["varepsilon_sq"], "above_transition": cfg["above"],
        "component_plotted": cfg["component"], "n_k": _BAND_N,
        "offset_e_plus": off_p, "offset_e_minus": off_m,
        "offsets": "each band shifted by the mean of its real part",
    }
    return rows, meta


def _render_pitchfork(csv_path: Path, png_path: Path) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    cols = emit.read_csv(csv_path)
    fig, (ax_re, ax_im) = plt.subplots(2, 1, sharex=True, figsize=(5.0, 6.0))
    ax_re.plot(cols["alpha_i"], cols["re_kappa_plus"], "C0", label=r"Re $\kappa_+$")
    ax_re.plot(cols["alpha_i"], cols["re_kappa_minus"], "C1--", label=r"Re $\kappa_-$")
    ax_im.plot(cols["alpha_i"], cols["im_kappa_plus"], "C0", label=r"Im $\kappa_+$")
    ax_im.plot(cols["alpha_i"], cols["im_kappa_minus"], "C1--", label=r"Im $\kappa_-$")
    ax_re.set_ylabel(r"Re $\kappa$")
    ax_im.set_ylabel(r"Im $\kappa$")
    ax_im.set_xlabel(r"Im $\alpha$")
    for ax in (ax_re, ax_im):
        ax.axvline(1.0, color="0.8", lw=0.8)
        ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)


def _render_band_pair(csv_path: Path, png_path: Path, component: str) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    cols = emit.read_csv(csv_path)
    pre = "re_" if component == "re" else "im_"
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.plot(cols["k"], cols[pre + "E_plus"], "C0", label=r"$E_+$")
    ax.plot(cols["k"], cols[pre + "E_minus"], "C1--", label=r"$E_-$")
    ax.set_xlabel(r"$k$")
    ax.set_ylabel(("Re" if component == "re" else "Im") + r" $E$")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)


def emit_figure_data(which: str, outdir: Pathish, render: bool = True) -> Dict[str, Path]:
    """Write one figure's data (CSV + sidecar) and optionally its PNG.

    Returns the paths written, keyed by kind ('csv', 'meta', 'png').
    """
    which = which.lower()
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    if which == "fig1":
        rows, meta = _pitchfork_table()
        header: Sequence[str] = emit.PITCHFORK_HEADER
        component = None
    elif which in _FIG2:
        rows, meta = _fig2_table(which)
        header = emit.FIGBAND_HEADER
        component = _FIG2[which]["component"]
    else:
        raise DomainError(f"unknown figure {which!r}; expected one of {FIGURE_KEYS}")
    csv_path = emit.write_csv(outdir / f"{which}.csv", header, rows)
    meta_path = emit.write_record(emit.sidecar_path(csv_path), meta)
    written = {"csv": csv_path, "meta": meta_path}
    if render:
        png_path = outdir / f"{which}.png"
        if which == "fig1":
            _render_pitchfork(csv_path, png_path)
        else:
            _render_band_pair(csv_path, png_path, component or "re")
        written["png"] = png_path
    return written


def emit_all_figures(outdir: Pathish, render: bool = True) -> Dict[str, Dict[str, Path]]:
    return {key: emit_figure_data(key, outdir, render=render) for key in FIGURE_KEYS}


def render_band_structure(csv_path: Pathish, png_path: Pathish) -> Path:
    """Plot a swept band CSV (re/im energy vs k, one panel each)."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    cols = emit.read_csv(csv_path)
    bands = sorted(set(int(b) for b in cols["band"]))
    fig, (ax_re, ax_im) = plt.subplots(2, 1, sharex=True, figsize=(5.0, 6.0))
    for b in bands:
        sel = [i for i, v in enumerate(cols["band"]) if int(v) == b]
        ks = [cols["k"][i] for i in sel]
        ax_re.plot(ks, [cols["re_E"][i] for i in sel], label=f"band {b}")
        ax_im.plot(ks, [cols["im_E"][i] for i in sel], label=f"band {b}")
    ax_re.set_ylabel("Re E")
    ax_im.set_ylabel("Im E")
    ax_im.set_xlabel("k")
    ax_re.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    png_path = Path(png_path)
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return png_path
