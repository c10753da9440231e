"""Core modules: weighted graphs, contraction, isomorphism, the extended cone, strata, enumeration and comparison."""
