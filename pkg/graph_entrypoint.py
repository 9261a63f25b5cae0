from core.graph.builder import build_graph

graph = build_graph()
