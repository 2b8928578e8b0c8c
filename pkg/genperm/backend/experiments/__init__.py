# Submodules are imported directly (genperm.backend.experiments.spreading, ...);
# detect depends on experiments.trials, so nothing is re-exported here.
