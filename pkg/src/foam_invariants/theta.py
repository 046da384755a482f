"""Lovász theta of a small graph as a dense semidefinite program solved with cvxopt"""

import logging

import cvxopt
import cvxopt.solvers
import networkx as nx
import numpy as np

from gauss_diagram.classes import NumericalError, ResourceLimitError

logger = logging.getLogger(__name__)

THETA_LIMIT = 32
MIN_TOLERANCE = 1e-8


def lovasz_theta(graph: nx.Graph, tol: float = 1e-7, max_iters: int = 100, limit: int = THETA_LIMIT) -> float:
    """
    min t  subject to  t·I − J − Σ x_e (E_ij + E_ji) ⪰ 0, one free x_e per edge ij.

    The optimum is the least largest eigenvalue of a symmetric matrix equal to 1 on the diagonal
    and on non-edges.
    """
    n = graph.number_of_nodes()
    if n > limit:
        raise ResourceLimitError("theta vertices", limit, n)
    if tol < MIN_TOLERANCE:
        raise ValueError(f"Tolerance must be at least {MIN_TOLERANCE}, got {tol}")
    if n == 0:
        return 0.0

    index = {v: i for i, v in enumerate(sorted(graph.nodes))}
    edges = [(index[u], index[v]) for u, v in graph.edges if u != v]
    variables = 1 + len(edges)

    G = np.zeros((n, n, variables))
    G[:, :, 0] = -np.eye(n)
    for k, (i, j) in enumerate(edges, start=1):
        G[i, j, k] = G[j, i, k] = 1.0
    h = -np.ones((n, n))
    c = np.zeros(variables)
    c[0] = 1.0

    options = {"show_progress": False, "abstol": tol / 10, "reltol": tol / 10, "feastol": tol / 10, "maxiters": max_iters}
    solution = cvxopt.solvers.sdp(
        cvxopt.matrix(c),
        Gs=[cvxopt.matrix(G.reshape(n * n, variables))],
        hs=[cvxopt.matrix(h)],
        options=options,
    )
    logger.debug("SDP status %s after %s iterations", solution["status"], solution.get("iterations"))
    if solution["status"] != "optimal":
        raise NumericalError(solution["status"])
    return float(solution["x"][0])
