import config


def test_testing_config_is_selected():
    settings = config.get_config()
    assert settings is config.TestingConfig
    assert settings.TESTING


def test_environment_selects_the_class(monkeypatch):
    monkeypatch.setenv("HOCHPROJ_ENV", "production")
    assert config.get_config() is config.ProductionConfig
    monkeypatch.setenv("HOCHPROJ_ENV", "unknown")
    assert config.get_config() is config.DevelopmentConfig
    monkeypatch.delenv("HOCHPROJ_ENV")
    assert config.get_config().DEBUG


def test_int_env(monkeypatch):
    monkeypatch.setenv("HOCHPROJ_TEST_VALUE", "17")
    assert config._int_env("HOCHPROJ_TEST_VALUE", 3) == 17
    monkeypatch.delenv("HOCHPROJ_TEST_VALUE")
    assert config._int_env("HOCHPROJ_TEST_VALUE", 3) == 3


def test_caps_are_positive():
    assert config.Config.BAR_CAP > 0 and config.Config.EXT_CAP > 0
    assert config.Config.ADMISSIBILITY_CAP >= 2


def test_development_logs_at_the_base_level():
    assert config.DevelopmentConfig.LOG_LEVEL == config.Config.LOG_LEVEL
