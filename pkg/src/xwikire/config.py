"""Flat ``key = value`` pipeline configuration.

Recognised keys (paths are relative to the config file)::

    langs            en,de,es,fr,it
    seed             integer (overridden by --seed)
    kb               KB dump, JSON lines
    corpus           corpus path pattern containing {lang}
    corpus.<lang>    corpus path for one language (wins over the pattern)
    properties       property catalog TSV (pid, lang, label)
    templates        template TSV (template_id, pid, lang, pattern)
    negative_ratio   negatives per positive, default 0.2
    fractions        UnENT train,dev,test fractions, default 0.8,0.1,0.1
    folds            UnREL fold count, default 5
    peek             true/false, UnREL peek-across-languages rotation
    pivot            pivot language for parallel test sets, default en
    finetune_sizes   comma list of finetuning budgets, default 1000,2000,5000,10000
    multilingual_size per-language training budget for joint training, default 200000
    template_holdout fraction of templates reserved for dev/test, default 0
    vocab            optional vocabulary file for coverage statistics
    locale, abbreviations, pronouns, agreement   optional table overrides
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .ingestion import LANGUAGES


class ConfigError(ValueError):
    pass


_PATH_KEYS = ("kb", "properties", "templates", "vocab", "locale", "abbreviations", "pronouns", "agreement")
_KNOWN = set(_PATH_KEYS) | {"langs", "seed", "corpus", "negative_ratio", "fractions", "folds", "peek",
                            "pivot", "finetune_sizes", "multilingual_size", "template_holdout"}


def _bool(value: str) -> bool:
    v = value.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {value!r}")


def parse_langs(value: str) -> tuple[str, ...]:
    langs = tuple(x.strip() for x in value.split(",") if x.strip())
    if not langs:
        raise ConfigError("empty language list")
    if len(set(langs)) != len(langs):
        raise ConfigError("duplicate language in list")
    return langs


@dataclass
class PipelineConfig:
    base_dir: Path = Path(".")
    langs: tuple[str, ...] = LANGUAGES
    seed: int = 0
    kb: Path | None = None
    corpora: dict[str, Path] = field(default_factory=dict)
    properties: Path | None = None
    templates: Path | None = None
    negative_ratio: float = 0.2
    fractions: tuple[float, float, float] = (0.8, 0.1, 0.1)
    folds: int = 5
    peek: bool = False
    pivot: str = "en"
    finetune_sizes: tuple[int, ...] = (1000, 2000, 5000, 10000)
    multilingual_size: int = 200000
    template_holdout: float = 0.0
    vocab: Path | None = None
    locale: Path | None = None
    abbreviations: Path | None = None
    pronouns: Path | None = None
    agreement: Path | None = None
    source: Path | None = None

    @classmethod
    def from_file(cls, path, overrides: dict[str, str] | None = None) -> "PipelineConfig":
        """Parse a config file; ``overrides`` replace raw values (e.g. ``langs``)."""
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        raw: dict[str, str] = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            if key not in _KNOWN and not key.startswith("corpus."):
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            raw[key] = value
        raw.update(overrides or {})
        return cls.from_mapping(raw, path.parent, source=path)

    @classmethod
    def from_mapping(cls, raw: dict[str, str], base_dir: Path, source: Path | None = None) -> "PipelineConfig":
        cfg = cls(base_dir=base_dir, source=source)
        try:
            if "langs" in raw:
                cfg.langs = parse_langs(raw["langs"])
            if "seed" in raw:
                cfg.seed = int(raw["seed"])
            for key in _PATH_KEYS:
                if raw.get(key):
                    setattr(cfg, key, base_dir / raw[key])
            for lang in cfg.langs:
                if f"corpus.{lang}" in raw:
                    cfg.corpora[lang] = base_dir / raw[f"corpus.{lang}"]
                elif "corpus" in raw:
                    cfg.corpora[lang] = base_dir / raw["corpus"].format(lang=lang)
            if "negative_ratio" in raw:
                cfg.negative_ratio = float(raw["negative_ratio"])
            if "fractions" in raw:
                fr = tuple(float(x) for x in raw["fractions"].split(","))
                if len(fr) != 3:
                    raise ConfigError("fractions needs three values")
                cfg.fractions = fr
            if "folds" in raw:
                cfg.folds = int(raw["folds"])
            if "peek" in raw:
                cfg.peek = _bool(raw["peek"])
            if "pivot" in raw:
                cfg.pivot = raw["pivot"]
            if "finetune_sizes" in raw:
                cfg.finetune_sizes = tuple(int(x) for x in raw["finetune_sizes"].split(",") if x.strip())
            if "multilingual_size" in raw:
                cfg.multilingual_size = int(raw["multilingual_size"])
            if "template_holdout" in raw:
                cfg.template_holdout = float(raw["template_holdout"])
        except (ValueError, KeyError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"bad config value: {exc}") from exc
        return cfg

    def require(self, *keys: str) -> None:
        missing = [k for k in keys if getattr(self, k) in (None, {}, ())]
        if "corpora" in keys:
            missing += [f"corpus.{lang}" for lang in self.langs if lang not in self.corpora and self.corpora]
        if missing:
            raise ConfigError(f"config is missing {', '.join(missing)}")

    def settings(self) -> dict:
        """Non-path settings, as recorded in run manifests."""
        return {"langs": list(self.langs), "seed": self.seed, "negative_ratio": self.negative_ratio,
                "fractions": list(self.fractions), "folds": self.folds, "peek": self.peek,
                "pivot": self.pivot, "finetune_sizes": list(self.finetune_sizes),
                "multilingual_size": self.multilingual_size, "template_holdout": self.template_holdout}

    def input_paths(self) -> dict[str, Path]:
        paths = {k: getattr(self, k) for k in _PATH_KEYS if getattr(self, k) is not None}
        for lang, p in sorted(self.corpora.items()):
            paths[f"corpus.{lang}"] = p
        return paths
