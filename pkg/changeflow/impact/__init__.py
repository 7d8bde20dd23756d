"""Change impact analysis"""
from changeflow.impact.dot import export_dot
from changeflow.impact.graph import Dependencies, DependencyGraph, dependency_graph, reaches

__all__ = ["Dependencies", "DependencyGraph", "dependency_graph", "export_dot", "reaches"]
