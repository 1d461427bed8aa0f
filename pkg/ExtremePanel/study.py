from __future__ import annotations

import numpy as np

from .em import em_fit
from .load_data import ModelConfig, read_panel_csv
from .panel import (
    FitResult,
    GroupAssignment,
    PanelData,
    conditional_quantiles,
    fit_grouped_panel,
)
from .regression import Family, LinkSpec
from .report import write_fit_report
from .selection import SweepResult, select_groups
from .threshold import ExceedancePanel, extract_exceedances, tail_quantiles
from .utils import validate_type


class Study:
    """Class for storing the steps of a grouped panel analysis.

    Attributes:
        panel_data: :class:`ExtremePanel.panel.PanelData` or None.
            The loaded panel; raw daily-scale series in gp-panel mode.
        model_config: :class:`ExtremePanel.load_data.ModelConfig` or None.
            Link structure, mode and EM options.
        exceedances: :class:`ExtremePanel.threshold.ExceedancePanel` or None.
            Threshold excesses of the panel in gp-panel mode.
        fit_result: :class:`ExtremePanel.panel.FitResult` or None.
            Result of the last :meth:`fit`.
        sweep_result: :class:`ExtremePanel.selection.SweepResult` or None.
            Result of the last :meth:`select`.
    """
    def __init__(self) -> None:
        self.panel_data = None
        self.model_config = None
        self.exceedances = None
        self.fit_result = None
        self.sweep_result = None

    # step 1 - data and model
    def load_panel(self,
                   path: str,
                   config: ModelConfig | None = None,
                   force_update: bool = False) -> None:
        """Read a panel CSV, applying the transforms of ``config``.

        Args:
            path: Long-format panel CSV.
            config: Model configuration; replaces the current one if given.
            force_update: Whether to force override and
                          clear the results of following steps.
        """
        if config is not None:
            self.set_model_config(config, force_update=force_update)
        data = read_panel_csv(path, self.model_config)
        self.set_panel_data(data, force_update=force_update)

    def set_panel_data(self, panel_data: PanelData, force_update: bool = False) -> None:
        validate_type(panel_data, PanelData, 'panel_data')
        self.clean_results(force_update=force_update)
        self.panel_data = panel_data
        self.exceedances = None

    def set_model_config(self, model_config: ModelConfig,
                         force_update: bool = False) -> None:
        validate_type(model_config, ModelConfig, 'model_config')
        self.clean_results(force_update=force_update)
        self.model_config = model_config
        self.exceedances = None

    def get_fit_data(self) -> PanelData:
        """Return the panel the model is fitted to.

        Raises:
            ValueError: If no panel or model configuration is set.
        """
        if self.panel_data is None:
            raise ValueError('No valid panel data is loaded')
        if self.model_config is None:
            raise ValueError('No valid model config is set')
        if self.model_config.mode is not Family.GP:
            return self.panel_data
        if self.exceedances is None:
            self.exceedances = extract_exceedances(self.panel_data, self.model_config.p0)
        return self.exceedances.data

    def get_link_spec(self) -> LinkSpec:
        return self.model_config.link_spec(self.get_fit_data().get_column_names())

    # step 2 - estimation
    def fit(self,
            n_groups: int | None = None,
            assignment: GroupAssignment | None = None,
            force_update: bool = False) -> FitResult:
        """Fit the model by EM, or for a given grouping.

        Args:
            n_groups: Number of groups estimated by EM.
            assignment: A priori grouping; skips the EM.
            force_update: Whether to force override the previous results.

        Raises:
            ValueError: If neither or both of ``n_groups`` and
                        ``assignment`` are given.
        """
        if (n_groups is None) == (assignment is None):
            raise ValueError('Exactly one of n_groups and assignment is required')
        self.clean_results(force_update=force_update)
        data = self.get_fit_data()
        spec = self.get_link_spec()
        if assignment is not None:
            validate_type(assignment, GroupAssignment, 'assignment')
            result = fit_grouped_panel(data, assignment, spec, self.model_config.em.optim)
        else:
            result = em_fit(data, n_groups, spec, self.model_config.em)
        self.fit_result = result
        return result

    def select(self, g_max: int | None = None, force_update: bool = False) -> SweepResult:
        """Run the BIC sweep; the selected fit becomes :attr:`fit_result`."""
        self.clean_results(force_update=force_update)
        data = self.get_fit_data()
        g_max = g_max or self.model_config.g_max
        self.sweep_result = select_groups(data, self.get_link_spec(), g_max,
                                          self.model_config.em)
        self.fit_result = self.sweep_result.best
        return self.sweep_result

    # step 3 - output
    def get_result(self) -> FitResult:
        if self.fit_result is None:
            raise ValueError('No valid fit result is generated')
        return self.fit_result

    def get_quantiles(self, prob: float) -> np.ndarray:
        """Fitted conditional ``prob``-quantiles of every cell of the fitted panel.

        In gp-panel mode these are quantiles of the raw series, which
        requires ``prob`` above the threshold level ``p0``.
        """
        result = self.get_result()
        data = self.get_fit_data()
        spec = self.get_link_spec()
        if isinstance(self.exceedances, ExceedancePanel):
            return tail_quantiles(
                data, result.coefficients, result.assignment, spec,
                self.exceedances.thresholds, self.exceedances.p0, prob
            )
        return conditional_quantiles(
            data, result.coefficients, result.assignment, spec, prob
        )

    def export_report(self, filepath: str) -> None:
        """Write the sweep report if a sweep ran, else the fit report."""
        result = self.sweep_result or self.get_result()
        data = self.get_fit_data()
        extra = {
            'column_names': data.get_column_names(),
            'individual_ids': [str(i) for i in data.get_individual_ids()],
        }
        if self.exceedances is not None:
            extra['thresholds'] = self.exceedances.thresholds.tolist()
        write_fit_report(result, filepath, seed=self.model_config.em.seed,
                         config=self.model_config.to_dict(), extra=extra)

    """clean work flow
    ########################################
    1. panel data / model config
    2. fit and sweep results
    """
    def should_clean_results(self, interact: bool = True) -> bool:
        """Return whether a fit or a sweep has been run.

        Args:
            interact: Whether to raise error if results exist.
        """
        response = self.fit_result is not None or self.sweep_result is not None
        if response and interact:
            raise ValueError(
                'This step has already been done, '
                'all following data will be removed if you reset this step.\n'
                'Please clean_results first.'
            )
        return response

    def clean_results(self, force_update: bool = True) -> None:
        """Clean fit and sweep results.

        Args:
            force_update: Whether to force override the results.
        """
        if not force_update:
            self.should_clean_results(interact=True)
        self.fit_result = None
        self.sweep_result = None

    def should_clean_panel(self, interact: bool = True) -> bool:
        response = self.panel_data is not None or self.should_clean_results(interact)
        if response and interact:
            raise ValueError(
                'This step has already been done, '
                'all following data will be removed if you reset this step.\n'
                'Please clean_panel first.'
            )
        return response

    def clean_panel(self, force_update: bool = True) -> None:
        """Clean the panel, its exceedances and the results."""
        self.clean_results(force_update=force_update)
        if not force_update:
            self.should_clean_panel(interact=True)
        self.panel_data = None
        self.exceedances = None
