import os
from functools import lru_cache
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Runtime settings, overridable through QWE_* environment variables"""

    model_config = SettingsConfigDict(env_prefix="QWE_")

    service_name: str = "quantum-weight-enumerator"
    log_level: str = "INFO"

    threads: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1)
    mem_cap: int = Field(default=2 * 1024**3, ge=1, description="bytes")
    group_cap: int = Field(default=2**26, ge=1)
    oracle_max_sites: int = 7
    psi_max_rank: int = 6

    jaeger_host: Optional[str] = None
    jaeger_port: int = 6831
    metrics_port: Optional[int] = None


@lru_cache
def get_settings() -> Settings:
    return Settings()
