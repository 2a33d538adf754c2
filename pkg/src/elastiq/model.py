"""Estimator facade over the functional fitting core.

``SequentialModel`` follows the fit/predict convention: construct with
hyperparameters, call :meth:`fit` on an observed table, then read the learned
attributes (``params_``, ``ratios_``, ``table_``) or call :meth:`predict` for
the reconstructed table.  The heavy lifting lives in :mod:`elastiq.inverse`
and :mod:`elastiq.forward`; this class only adds state and validation.
"""
from __future__ import annotations

from typing import Any, Mapping, Optional, Union

from . import io
from .errors import NotFittedError
from .forward import ModelParams, SeqProbTable, sequential_probs_closed_form
from .inverse import Gauge, extract_ratios, resolve
from .qtests import QTestReport, quantum_test_report

TableLike = Union[SeqProbTable, io.SurveyInput, Mapping[str, Any], str]

_FITTED_ATTRS = ("table_", "ratios_", "params_")


class SequentialModel:
    """Two-measurement sequential probability model with closed-form fitting.

    Parameters
    ----------
    gauge:
        Free-parameter choice as ``"kind=value"``, e.g. ``"eps-a=0.5"``.
        The inverse problem determines six ratios; the gauge pins the seventh
        degree of freedom.
    exact:
        When true, all arithmetic is carried out over rationals and the
        fitted parameters are `Fraction` instances.
    """

    def __init__(self, gauge: str = "eps-a=0.5", exact: bool = False):
        self.gauge = gauge
        self.exact = exact

    def get_params(self, deep: bool = True) -> dict[str, Any]:
        return {"gauge": self.gauge, "exact": self.exact}

    def set_params(self, **params: Any) -> "SequentialModel":
        valid = self.get_params()
        for key, value in params.items():
            if key not in valid:
                raise ValueError(
                    f"invalid parameter {key!r} for SequentialModel; "
                    f"valid parameters are {sorted(valid)}"
                )
            setattr(self, key, value)
        return self

    def _as_table(self, X: TableLike) -> SeqProbTable:
        if isinstance(X, SeqProbTable):
            return X
        if isinstance(X, str):
            X = io.load_survey(X)
        if isinstance(X, Mapping):
            X = io.survey_from_dict(dict(X))
        if isinstance(X, io.SurveyInput):
            return io.normalize_table(X, exact=self.exact)
        raise TypeError(
            "X must be a SeqProbTable, SurveyInput, mapping, or path to a "
            f"survey JSON file, got {type(X).__name__}"
        )

    def fit(self, X: TableLike, y: None = None) -> "SequentialModel":
        """Learn model parameters from an observed sequential table.

        ``X`` may be a :class:`SeqProbTable`, a :class:`SurveyInput`, a survey
        mapping with ``label``/``pAB``/``pBA`` keys, or a path to such a JSON
        file.  ``y`` is accepted for interface compatibility and ignored.
        """
        gauge = Gauge.parse(self.gauge, exact=self.exact)
        table = self._as_table(X)
        ratios = extract_ratios(table)
        self.table_ = table
        self.ratios_ = ratios
        self.params_ = resolve(ratios, gauge)
        return self

    def _check_fitted(self) -> None:
        missing = [a for a in _FITTED_ATTRS if not hasattr(self, a)]
        if missing:
            raise NotFittedError(
                "this SequentialModel instance is not fitted yet; "
                "call fit() before using this method"
            )

    def predict(self, X: None = None) -> SeqProbTable:
        """Reconstruct the sequential table from the fitted parameters.

        The closed-form inverse guarantees the reconstruction reproduces the
        fitted table up to arithmetic precision (exactly in exact mode).
        ``X`` is accepted for interface compatibility and ignored.
        """
        self._check_fitted()
        return sequential_probs_closed_form(self.params_)

    def quantum_tests(self) -> QTestReport:
        """Quantum-equality report for the fitted table."""
        self._check_fitted()
        params: Optional[ModelParams] = self.params_
        if params is not None and not params.sensitivity_satisfied():
            params = None
        return quantum_test_report(self.table_, params=params)

    def __repr__(self) -> str:
        return f"SequentialModel(gauge={self.gauge!r}, exact={self.exact!r})"


__all__ = ["SequentialModel", "TableLike"]
