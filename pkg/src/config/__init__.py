from src.config.schemas import CheckName, Command, Duration, GammaMode, JsonSchemaModel, OutputFormat, Status
from src.config.settings import RuntimeSettings

__all__ = [
    "CheckName",
    "Command",
    "Duration",
    "GammaMode",
    "JsonSchemaModel",
    "OutputFormat",
    "RuntimeSettings",
    "Status",
]
