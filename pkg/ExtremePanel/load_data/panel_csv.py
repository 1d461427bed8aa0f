"""Long-format panel CSV files.

One row per (individual, period) with the header ``id,time,y,<covariates>``.
An empty ``y`` field or ``NA`` marks a missing cell.
"""
from __future__ import annotations

import numpy as np
import pandas as pd

from ..panel import PanelData
from ..utils import ParseError
from .config import ModelConfig, Transform

INDEX_COLUMNS = ('id', 'time', 'y')
MISSING_TOKENS = ('', 'NA')


def _row_number(position: int) -> int:
    """File line of the ``position``-th data row (the header is line 1)."""
    return position + 2

def _parse_numbers(column: pd.Series, name: str,
                   required: np.ndarray | None = None) -> np.ndarray:
    text = column.fillna('').str.strip()
    missing = text.isin(MISSING_TOKENS)
    values = pd.to_numeric(text.where(~missing), errors='coerce')
    bad = values.isna() & ~missing
    if bad.any():
        position = int(np.flatnonzero(bad.to_numpy())[0])
        raise ParseError(
            f"non-numeric value {text.iloc[position]!r} in column {name!r}",
            row=_row_number(position),
        )
    if required is not None and np.any(missing.to_numpy() & required):
        position = int(np.flatnonzero(missing.to_numpy() & required)[0])
        raise ParseError(f"missing value in column {name!r}", row=_row_number(position))
    return values.to_numpy(dtype=float)

def _apply_transforms(columns: dict, config: ModelConfig | None) -> None:
    if config is None:
        return
    for name, kind in config.transforms.items():
        if name not in columns:
            raise ParseError(f"transform on unknown column {name!r}")
        if kind is Transform.LOG:
            values = columns[name]
            nonpositive = np.flatnonzero(values <= 0)
            if len(nonpositive):
                raise ParseError(
                    f"log transform of non-positive value {values[nonpositive[0]]!r} "
                    f"in column {name!r}",
                    row=_row_number(int(nonpositive[0])),
                )
            columns[name] = np.log(values)

def read_panel_csv(path: str, config: ModelConfig | None = None) -> PanelData:
    """Read a long-format CSV into a :class:`PanelData`.

    Individuals and periods are indexed in order of first appearance; the
    original labels are kept as ``individual_ids`` and ``time_index``.

    Raises:
        ParseError: On a malformed header, ragged or non-numeric rows,
            duplicated cells or an invalid transform; ``row`` is the file line.
    """
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    except pd.errors.ParserError as error:
        raise ParseError(f"{path}: {error}") from None
    except pd.errors.EmptyDataError:
        raise ParseError(f"{path}: empty file") from None
    header = [str(name).strip() for name in frame.columns]
    if tuple(header[:3]) != INDEX_COLUMNS:
        raise ParseError(f"header must start with id,time,y, got {header[:3]}", row=1)
    frame.columns = header
    if frame.empty:
        raise ParseError(f"{path}: no data rows")
    covariate_names = header[3:]

    ids = frame['id'].fillna('').str.strip()
    times = frame['time'].fillna('').str.strip()
    for name, labels in (('id', ids), ('time', times)):
        empty = np.flatnonzero((labels == '').to_numpy())
        if len(empty):
            raise ParseError(f"missing {name}", row=_row_number(int(empty[0])))
    duplicated = np.flatnonzero(pd.DataFrame({'id': ids, 'time': times})
                                .duplicated().to_numpy())
    if len(duplicated):
        raise ParseError(
            f"duplicate cell ({ids.iloc[duplicated[0]]}, {times.iloc[duplicated[0]]})",
            row=_row_number(int(duplicated[0])),
        )

    y = _parse_numbers(frame['y'], 'y')
    columns = {
        name: _parse_numbers(frame[name], name, required=~np.isnan(y))
        for name in covariate_names
    }
    _apply_transforms(columns, config)

    individual_codes, individual_ids = pd.factorize(ids, sort=False)
    time_codes, time_index = pd.factorize(times, sort=False)
    shape = (len(individual_ids), len(time_index))
    panel_y = np.full(shape, np.nan)
    panel_y[individual_codes, time_codes] = y
    panel_x = np.full(shape + (len(covariate_names),), np.nan)
    for k, name in enumerate(covariate_names):
        panel_x[individual_codes, time_codes, k] = columns[name]
    return PanelData(
        panel_y, panel_x,
        column_names=covariate_names,
        individual_ids=list(individual_ids),
        time_index=list(time_index),
    )

def write_panel_csv(data: PanelData, path: str) -> None:
    """Write ``data`` in long format, one row per cell, 17 significant digits."""
    ids = np.repeat(np.asarray(data.get_individual_ids(), dtype=object), data.n_periods)
    times = np.tile(np.asarray(data.get_time_index(), dtype=object), data.n_individuals)
    frame = pd.DataFrame({'id': ids, 'time': times, 'y': data.y.reshape(-1)})
    for k, name in enumerate(data.get_column_names()):
        frame[name] = data.x[:, :, k].reshape(-1)
    frame.to_csv(path, index=False, float_format='%.17g', na_rep='')
