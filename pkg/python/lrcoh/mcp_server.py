#!/usr/bin/env python
"""Tool server exposing the cohomology commands over MCP (stdio).

    python -m lrcoh.mcp_server
"""

import os
from typing import Any, Dict, Optional

from mcp.server.fastmcp import FastMCP

from .cli import cmd_check, cmd_cohomology, cmd_connection
from .errors import LrcohError
from .report import ConnectionSpec, ModuleSpec, validate_document, problem_from_dict

# ============================================================
#  CONFIG
# ============================================================

SERVER_NAME = os.getenv("LRCOH_SERVER_NAME", "LieRinehart")
# stability re-runs everything at a second bound; tools skip it unless asked
CHECK_STABILITY = os.getenv("LRCOH_SERVER_STABILITY", "0") == "1"


def _failure(e: Exception) -> Dict[str, Any]:
    return {"ok": False, "error": type(e).__name__, "message": str(e)}


# ============================================================
#  MCP SERVER & TOOLS
# ============================================================

mcp = FastMCP(SERVER_NAME)


@mcp.tool(
    name="check_problem",
    description=(
        "Validate a problem document: weighted homogeneity of f, compatibility of the "
        "cyclic action, pseudo-reflections and the Galois flag."
    ),
)
def check_problem(problem: Dict[str, Any]) -> Dict[str, Any]:
    try:
        return cmd_check(problem_from_dict(problem)).model_dump(mode="json")
    except (LrcohError, ValueError) as e:
        return _failure(e)


@mcp.tool(
    name="cohomology_table",
    description=(
        "Dimensions of H^n(Der A, A) per internal degree, split by ξ-weight when the "
        "problem has an action. window is 'LO:HI'; invariants needs galois_asserted."
    ),
)
def cohomology_table(problem: Dict[str, Any], max_n: Optional[int] = None,
                     window: Optional[str] = None, invariants: bool = False) -> Dict[str, Any]:
    try:
        report = cmd_cohomology(problem_from_dict(problem), max_n, window, invariants,
                                check_stability=CHECK_STABILITY)
        return report.model_dump(mode="json")
    except (LrcohError, ValueError) as e:
        return _failure(e)


@mcp.tool(
    name="analyse_connection",
    description=(
        "Verify a connection on a rank-one module, classify its curvature in H^2 and, "
        "with compare, decide whether two integrable connections are equivalent."
    ),
)
def analyse_connection(problem: Dict[str, Any], module: Dict[str, Any], connection: Dict[str, Any],
                       equivariant: bool = False,
                       compare: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    try:
        spec = problem_from_dict(problem)
        mod = validate_document(module, ModuleSpec, "module")
        conn = validate_document(connection, ConnectionSpec, "connection")
        other = validate_document(compare, ConnectionSpec, "compare") if compare is not None else None
        return cmd_connection(spec, mod, conn, equivariant, other).model_dump(mode="json")
    except (LrcohError, ValueError) as e:
        return _failure(e)


# ============================================================
#  ENTRYPOINT (STDIO MCP)
# ============================================================

def main():
    mcp.run()


if __name__ == "__main__":
    main()
