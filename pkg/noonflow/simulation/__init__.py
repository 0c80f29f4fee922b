from noonflow.simulation.noon_state import NoonStateBuilder
from noonflow.simulation.master_equation import MasterEquationSolver

__all__ = ['NoonStateBuilder', 'MasterEquationSolver']
