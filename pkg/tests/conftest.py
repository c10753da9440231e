"""Shared fixtures: source path setup and the named graphs used across the suite."""

import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), '..', 'src'))
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from tropmod.modules.graph_core import WeightedGraph, dumbbell_graph, theta_graph  # noqa: E402


@pytest.fixture
def theta() -> WeightedGraph:
    return theta_graph()


@pytest.fixture
def dumbbell() -> WeightedGraph:
    return dumbbell_graph()


@pytest.fixture
def loop_with_two_leaves() -> WeightedGraph:
    """Genus 1, two leaves: a loop at one vertex, a bridge to a vertex carrying both leaves."""
    return WeightedGraph.build(
        {"a": 0, "b": 0},
        [("loop", "a", "a"), ("bridge", "a", "b")],
        {1: "b", 2: "b"},
    )


@pytest.fixture
def cycle_with_two_leaves() -> WeightedGraph:
    """Genus 1, two leaves: a two-cycle with one leaf on each vertex."""
    return WeightedGraph.build(
        {"a": 0, "b": 0},
        [("up", "a", "b"), ("down", "a", "b")],
        {1: "a", 2: "b"},
    )
