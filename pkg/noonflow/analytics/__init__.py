from noonflow.analytics.metrology import PhaseMetrology
from noonflow.analytics.entanglement import EntanglementAnalytics

__all__ = ['PhaseMetrology', 'EntanglementAnalytics']
