import os
from dataclasses import dataclass, asdict

from dotenv import load_dotenv

load_dotenv()


def _env_flag(name: str) -> bool:
    return os.environ.get(name, "false").lower() == "true"


@dataclass
class Settings:
    cap_elements: int = 20_000
    cap_lattice: int = 200_000
    cap_lattice_order: int = 2_184
    seed: int = 0xC0FFEE
    jobs: int = 1
    sample_size: int = 6
    skip_oversize: bool = False
    debug: bool = False

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            cap_elements=int(os.environ.get("CAP_ELEMENTS", 20_000)),
            cap_lattice=int(os.environ.get("CAP_LATTICE", 200_000)),
            cap_lattice_order=int(os.environ.get("CAP_LATTICE_ORDER", 2_184)),
            seed=int(os.environ.get("SEED", str(0xC0FFEE)), 0),
            jobs=int(os.environ.get("JOBS", 1)),
            sample_size=int(os.environ.get("SAMPLE_SIZE", 6)),
            skip_oversize=_env_flag("SKIP_OVERSIZE"),
            debug=_env_flag("DEBUG"),
        )

    def echo(self) -> dict:
        """
        The settings that influence results, as recorded in report bundles.
        """
        data = asdict(self)
        data.pop("debug")
        data.pop("jobs")  # results never depend on the thread count
        return data


settings = Settings.from_env()


def configure(**overrides) -> Settings:
    """
    Overrides settings in place; `None` values leave the current value untouched.
    :return: The live settings object.
    """
    for key, value in overrides.items():
        if not hasattr(settings, key):
            raise KeyError(f"Unknown setting: {key}")
        if value is not None:
            setattr(settings, key, value)
    return settings
