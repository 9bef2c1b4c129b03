import os
from dataclasses import dataclass
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

@dataclass
class SolverConfig:
    """Exact search configuration"""
    node_budget: int = 10 ** 8
    threads: int = 1
    overfull_subset_limit: int = 14

@dataclass
class GeneratorConfig:
    """Random instance generation"""
    retry_cap: int = 10 ** 4
    default_seed: int = 0

@dataclass
class TractableConfig:
    """Limits for the exhaustive dominating-set searches"""
    mcds_max_vertices: int = 20
    exhaustive_cds_limit: int = 12

@dataclass
class AppConfig:
    """Application configuration"""
    env: str = "development"
    debug: bool = False
    log_level: str = "WARNING"

class Config:
    """Main configuration class"""

    def __init__(self):
        self.solver = SolverConfig(
            node_budget=int(os.getenv("EDGECOL_NODE_BUDGET", str(10 ** 8))),
            threads=int(os.getenv("EDGECOL_THREADS", "1")),
            overfull_subset_limit=int(os.getenv("EDGECOL_OVERFULL_SUBSET_LIMIT", "14"))
        )

        self.generator = GeneratorConfig(
            retry_cap=int(os.getenv("EDGECOL_RETRY_CAP", str(10 ** 4))),
            default_seed=int(os.getenv("EDGECOL_SEED", "0"))
        )

        self.tractable = TractableConfig(
            mcds_max_vertices=int(os.getenv("EDGECOL_MCDS_MAX_VERTICES", "20")),
            exhaustive_cds_limit=int(os.getenv("EDGECOL_EXHAUSTIVE_CDS_LIMIT", "12"))
        )

        self.app = AppConfig(
            env=os.getenv("APP_ENV", "development"),
            debug=os.getenv("DEBUG", "false").lower() == "true",
            log_level=os.getenv("LOG_LEVEL", "WARNING").upper()
        )

    def validate(self) -> bool:
        """Validate configuration"""
        if self.solver.node_budget <= 0:
            raise ValueError("EDGECOL_NODE_BUDGET must be positive")

        if self.solver.threads <= 0:
            raise ValueError("EDGECOL_THREADS must be positive")

        if self.solver.overfull_subset_limit < 0:
            raise ValueError("EDGECOL_OVERFULL_SUBSET_LIMIT cannot be negative")

        if self.generator.retry_cap <= 0:
            raise ValueError("EDGECOL_RETRY_CAP must be positive")

        if self.tractable.exhaustive_cds_limit > self.tractable.mcds_max_vertices:
            raise ValueError("EDGECOL_EXHAUSTIVE_CDS_LIMIT cannot exceed EDGECOL_MCDS_MAX_VERTICES")

        if self.app.log_level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"LOG_LEVEL must be a logging level name, got {self.app.log_level}")

        return True

# Global config instance
config = Config()
