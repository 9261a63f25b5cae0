from langgraph.graph import END, StateGraph

from core.graph.nodes import (
    escalate_precision_node,
    plan_node,
    run_checks_node,
    should_retry,
    summarize_node,
)
from core.graph.state import SweepState


def build_graph() -> StateGraph:
    workflow = StateGraph(SweepState)

    workflow.add_node("plan", plan_node)
    workflow.add_node("run_checks", run_checks_node)
    workflow.add_node("escalate_precision", escalate_precision_node)
    workflow.add_node("summarize", summarize_node)

    workflow.set_entry_point("plan")
    workflow.add_edge("plan", "run_checks")

    # Failed instances are re-run at higher precision, or the sweep ends
    workflow.add_conditional_edges(
        "run_checks",
        should_retry,
        {
            "escalate": "escalate_precision",
            "summarize": "summarize",
        },
    )
    workflow.add_edge("escalate_precision", "run_checks")
    workflow.add_edge("summarize", END)

    return workflow.compile()
