# src/utils.py
import csv
import logging
from enum import Enum
from pathlib import Path
from typing import Iterable, List, Type

from pydantic import BaseModel

import config
from models.sweep_record import SweepRecord

logger = logging.getLogger(__name__)


def resolve_output_path(filename) -> Path:
    """Relative output paths are placed under LIPKIN_OUTPUT_DIR"""
    path = Path(filename)
    return path if path.is_absolute() else Path(config.OUTPUT_DIR) / path


def _format_value(value) -> str:
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return format(value, config.CSV_FLOAT_FORMAT)
    return str(value)


def save_records_to_csv(records: Iterable[BaseModel], filename: str,
                        data_struct: Type[BaseModel] = SweepRecord) -> Path:
    """
    Saves records to a CSV file using the structure defined in the Pydantic model
    Args:
        records: Pydantic model instances, written in the given order
        filename: Output CSV file path
        data_struct: Pydantic model class defining the columns
    Returns:
        Path of the written file
    """
    records = list(records)
    if not records:
        logger.warning("⚠️ No records to save, writing header only to '%s'", filename)

    # Column order is the model's field order
    fieldnames = list(data_struct.model_fields.keys())
    path = resolve_output_path(filename)
    path.parent.mkdir(parents=True, exist_ok=True)

    with open(path, mode="w", newline="", encoding="utf-8") as file:
        writer = csv.DictWriter(file, fieldnames=fieldnames, delimiter=config.CSV_DELIMITER,
                                lineterminator=config.CSV_LINE_TERMINATOR)
        writer.writeheader()
        for record in records:
            writer.writerow({name: _format_value(getattr(record, name)) for name in fieldnames})

    logger.info("💾 Saved %d records to '%s'", len(records), path)
    return path


def load_records_csv(filename: str, data_struct: Type[BaseModel] = SweepRecord) -> List[BaseModel]:
    """
    Reads records written by save_records_to_csv back into Pydantic models
    Args:
        filename: CSV file path
        data_struct: Pydantic model class the rows are validated against
    Returns:
        List of validated records in file order
    """
    with open(filename, mode="r", newline="", encoding="utf-8") as file:
        reader = csv.DictReader(file, delimiter=config.CSV_DELIMITER)
        records = [data_struct.model_validate(row) for row in reader]
    logger.info("📂 Loaded %d records from '%s'", len(records), filename)
    return records
