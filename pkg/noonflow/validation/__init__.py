from noonflow.validation.oracle_suite import OracleSuite

__all__ = ['OracleSuite']
