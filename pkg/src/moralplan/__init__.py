"""moralplan: planning with several moral theories, then choosing by hypothetical retrospection.

A problem is a finite-horizon MDP whose reward is replaced by typed moral
considerations (utilities, absolute constraints, an optional cost) and ranked
theories that argue from them. Solving happens in two stages:

1. `moralplan.solver` searches the reachable state-times for the
   Pareto-undominated non-stationary policies.
2. `moralplan.retrospection` imagines every history of each policy, lets the
   theories attack the choices that could have foreseeably gone better and
   keeps the policies with the least probability-weighted attack count.

## Quick start

```bash
moralplan solve insulin.domain.yaml
moralplan graph insulin.domain.yaml --dot insulin.dot
moralplan oracle-check --random 200 --seed 7
```

## Main modules

- `moralplan.models`: considerations, problems, policies and the domain file format.
- `moralplan.solver`: the undominated-policy search.
- `moralplan.retrospection`: histories, attacks and selection.
- `moralplan.oracle`: brute-force reference used to check the solver.
- `moralplan.commands`: command implementations behind the CLI.
"""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("moralplan")
except PackageNotFoundError:
    # Package is not installed, use a fallback version
    __version__ = "0.0.0+dev"

__all__ = ["commands", "models", "oracle", "retrospection", "solver"]
