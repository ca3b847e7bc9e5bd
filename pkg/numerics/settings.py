import json
import os
from functools import lru_cache
from pathlib import Path
from typing import List

from dotenv import load_dotenv
from pydantic import BaseModel, Field

CONFIG_PATH = Path(__file__).with_name("config.json")


class EvaluationSettings(BaseModel):
    tolerance: float = Field(1e-12, gt=0)
    precision: int = Field(28, ge=10)
    guard_digits: int = Field(5, ge=0)
    pole_distance: float = Field(1e-15, gt=0)
    max_refinements: int = Field(4, ge=1)
    depth_cap: int = 4
    weight_cap: int = 8


class LabSettings(BaseModel):
    check_tolerance: float = Field(1e-9, gt=0)
    diffeq_points: List[str] = ["1", "2", "0.5", "1,1"]
    stuffle_points: List[str] = ["0", "0.5", "1,1"]
    endtoend_points: List[str] = ["0", "0.5", "1,1"]
    depth_one_points: List[str] = ["0", "0.5", "1", "10", "-0.5", "1,1"]
    rank_factor: float = 1e6
    slack_points: int = 8
    holdout_points: int = 3
    default_point_count: int = 20
    certificate_precision: int = 50
    certificate_tolerance: float = 1e-40
    independence_trials: int = 50
    independence_seed: int = 20240131


class Settings(BaseModel):
    evaluation: EvaluationSettings = EvaluationSettings()
    lab: LabSettings = LabSettings()


def load_settings(path: Path = CONFIG_PATH) -> Settings:
    """Read config.json, then apply environment overrides (.env is honoured)."""
    load_dotenv()
    data = {}
    if path.exists():
        with open(path, encoding="utf-8") as f:
            data = json.load(f)

    evaluation = data.setdefault("evaluation", {})
    if os.getenv("HMZF_PRECISION"):
        evaluation["precision"] = int(os.environ["HMZF_PRECISION"])
    if os.getenv("HMZF_TOLERANCE"):
        evaluation["tolerance"] = float(os.environ["HMZF_TOLERANCE"])

    return Settings.model_validate(data)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return load_settings()
