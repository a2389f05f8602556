import pytest

from brauerheight.config import DEFAULT_SEED, OutputFormat, RunConfig
from brauerheight.exceptions import ConfigError
from brauerheight.witt import DEFAULT_LENGTH_CAP


class TestRunConfig:
    def test_defaults(self):
        config = RunConfig()

        assert config.p is None
        assert config.output_format is OutputFormat.TEXT
        assert config.seed == DEFAULT_SEED
        assert config.witt_length_cap == DEFAULT_LENGTH_CAP

    def test_format_from_string(self):
        assert RunConfig(output_format="csv").output_format is OutputFormat.CSV

        with pytest.raises(ConfigError):
            RunConfig(output_format="yaml")

    @pytest.mark.parametrize(
        "changes",
        [
            {"p": 9},
            {"d": 0},
            {"truncation": 1},
            {"i_max": 0},
            {"window": 0},
            {"window_growth": 1},
            {"width": 0},
            {"window": 8, "window_cap": 4},
        ],
    )
    def test_rejects(self, changes):
        with pytest.raises(ConfigError):
            RunConfig(**changes)

    def test_with(self):
        config = RunConfig(p=5).with_(i_max=2)

        assert (config.p, config.i_max) == (5, 2)

        with pytest.raises(ConfigError):
            config.with_(p=4)


class TestFromEnv:
    def test_environment(self):
        environ = {
            "BRAUERHEIGHT_CACHE_DIR": "/tmp/witt",
            "BRAUERHEIGHT_WITT_CAP": "3",
            "BRAUERHEIGHT_WIDTH": "4",
        }
        config = RunConfig.from_env(environ)

        assert config.witt_cache_dir == "/tmp/witt"
        assert config.witt_length_cap == 3
        assert config.width == 4

    def test_overrides_win(self):
        config = RunConfig.from_env({"BRAUERHEIGHT_WIDTH": "4"}, width=2, p=7)

        assert config.width == 2
        assert config.p == 7

    def test_none_overrides_are_ignored(self):
        config = RunConfig.from_env({"BRAUERHEIGHT_WIDTH": "4"}, width=None, window=None)

        assert config.width == 4
        assert config.window is None

    def test_bad_integer(self):
        with pytest.raises(ConfigError) as info:
            RunConfig.from_env({"BRAUERHEIGHT_WITT_CAP": "five"})

        assert "BRAUERHEIGHT_WITT_CAP" in str(info.value)

    def test_unknown_setting(self):
        with pytest.raises(ConfigError):
            RunConfig.from_env({}, colour="red")

    def test_empty_environment(self):
        assert RunConfig.from_env({}) == RunConfig()

    def test_log_level(self):
        config = RunConfig.from_env({"BRAUERHEIGHT_LOG_LEVEL": "debug"})

        assert config.log_level == "DEBUG"
        override = RunConfig.from_env({"BRAUERHEIGHT_LOG_LEVEL": "debug"}, log_level="ERROR")
        assert override.log_level == "ERROR"

    def test_bad_log_level(self):
        with pytest.raises(ConfigError):
            RunConfig.from_env({"BRAUERHEIGHT_LOG_LEVEL": "LOUD"})
