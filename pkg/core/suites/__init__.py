"""Named verification suites: each plans a deterministic list of instances and checks one at a time."""
