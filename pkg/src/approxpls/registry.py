"""Scheme names and constructors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

from .certify import (hamiltonian_feasibility_scheme, mst_certify_scheme,
                      terminal_tree_feasibility_scheme, two_candidate_le_scheme)
from .cover_match import (make_bmatching_adpls, make_bmatching_apls, make_bmatching_bipartite_dpls,
                          make_bmatching_bipartite_pls, make_edge_cover_adpls, make_edge_cover_apls,
                          make_edge_cover_bipartite_dpls, make_edge_cover_bipartite_pls,
                          make_odd_ring_edge_cover_dpls, make_odd_ring_edge_cover_pls)
from .flow_cut import make_flow_dpls, make_flow_pls, make_maxcut_adpls, make_maxcut_apls
from .gpls import Scheme
from .vca import (ds_feasibility_scheme, make_ds_adpls, make_ds_apls, make_steiner_adpls,
                  make_steiner_apls, make_tsp_adpls, make_tsp_apls, make_vc_adpls, make_vc_apls,
                  vc_feasibility_scheme)


class UnknownScheme(KeyError):
    pass


@dataclass(frozen=True)
class Entry:
    name: str
    needs: Tuple[str, ...]          # subset of ("kappa", "k")
    build: Callable[..., Scheme]
    primary: bool = True


def _e(name: str, needs: Tuple[str, ...], build: Callable[..., Scheme], primary: bool = True) -> Entry:
    return Entry(name, needs, build, primary)


ENTRIES: Dict[str, Entry] = {e.name: e for e in [
    _e("edge-cover-apls", ("kappa",), make_edge_cover_apls),
    _e("edge-cover-bipartite-pls", (), make_edge_cover_bipartite_pls),
    _e("edge-cover-ring-pls", (), make_odd_ring_edge_cover_pls),
    _e("edge-cover-ring-dpls", ("k",), make_odd_ring_edge_cover_dpls),
    _e("edge-cover-adpls", ("kappa", "k"), make_edge_cover_adpls),
    _e("edge-cover-bipartite-dpls", ("k",), make_edge_cover_bipartite_dpls),
    _e("bmatching-apls", ("kappa",), make_bmatching_apls),
    _e("bmatching-bipartite-pls", (), make_bmatching_bipartite_pls),
    _e("bmatching-adpls", ("kappa", "k"), make_bmatching_adpls),
    _e("bmatching-bipartite-dpls", ("k",), make_bmatching_bipartite_dpls),
    _e("vc-adpls", ("k",), make_vc_adpls),
    _e("vc-apls", (), make_vc_apls),
    _e("ds-adpls", ("k",), make_ds_adpls),
    _e("ds-apls", (), make_ds_apls),
    _e("tsp-adpls", ("k",), make_tsp_adpls),
    _e("tsp-apls", (), make_tsp_apls),
    _e("steiner-adpls", ("k",), make_steiner_adpls),
    _e("steiner-apls", (), make_steiner_apls),
    _e("flow-pls", (), make_flow_pls),
    _e("flow-dpls", ("k",), make_flow_dpls),
    _e("maxcut-apls", (), make_maxcut_apls),
    _e("maxcut-adpls", ("k",), make_maxcut_adpls),
    _e("two-candidate-le", (), two_candidate_le_scheme, primary=False),
    _e("mst", (), mst_certify_scheme, primary=False),
    _e("hamiltonian-feasibility", (), hamiltonian_feasibility_scheme, primary=False),
    _e("terminal-tree-feasibility", (), terminal_tree_feasibility_scheme, primary=False),
    _e("vc-feasibility", (), vc_feasibility_scheme, primary=False),
    _e("ds-feasibility", (), ds_feasibility_scheme, primary=False),
]}

PRIMARY = tuple(name for name, e in ENTRIES.items() if e.primary)


def build_scheme(name: str, kappa: Optional[int] = None, k: Optional[int] = None) -> Scheme:
    """Instantiate ``name``; missing required parameters raise ``ValueError``."""
    try:
        entry = ENTRIES[name]
    except KeyError:
        raise UnknownScheme(name) from None
    given = {"kappa": kappa, "k": k}
    args = []
    for key in entry.needs:
        if given[key] is None:
            raise ValueError(f"scheme {name} needs --{key}")
        args.append(given[key])
    if "kappa" in entry.needs and kappa is not None and kappa < 1:
        raise ValueError("kappa must be a positive integer")
    return entry.build(*args)
