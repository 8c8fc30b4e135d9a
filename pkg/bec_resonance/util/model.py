from pydantic import BaseModel, ConfigDict

NUMERIC = int | float


class ArrayModel(BaseModel):
    """Base class for immutable records carrying numpy arrays."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


class ChannelStatistics(BaseModel):
    """Summary statistics of a single time-series channel."""

    channel: str
    count: int
    mean: NUMERIC
    std: NUMERIC | None

    min: NUMERIC
    q05: NUMERIC
    q25: NUMERIC
    q50: NUMERIC
    q75: NUMERIC
    q95: NUMERIC
    max: NUMERIC

    final: NUMERIC
