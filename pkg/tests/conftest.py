import pytest
from hypothesis import settings

import hypersub as hs
from hypersub import config


settings.register_profile("hypersub", deadline=None)
settings.load_profile("hypersub")


@pytest.fixture(autouse=True)
def config_home(tmp_path, monkeypatch):
    """A private configuration file and results store for every test."""
    monkeypatch.setattr(config, '_get_config_path', lambda: str(tmp_path))
    with open(config._get_config_file(), 'w') as f:
        f.write("[store]\npath = %s\n" % (tmp_path / 'store.sqlite'))
    monkeypatch.setattr(hs, '_engine', None)
    monkeypatch.setattr(hs, '_session', None)
    return tmp_path


@pytest.fixture
def papers():
    """Four hyperedges: two pairs, a repeated pair and a triple."""
    return hs.build_sample(["1 2", "1 2", "2 3", "1 2 3"])


@pytest.fixture
def generated():
    model = hs.GeneratorModel(alpha=2.0, n_vertices=1000)
    return hs.generate(model, 120, seed=11)


@pytest.fixture
def hyperedge_file(tmp_path):
    """Write lines to a file under `tmp_path` and return its path."""
    def write(name, lines):
        path = tmp_path / name
        path.write_text('\n'.join(lines) + '\n', encoding='utf-8')
        return str(path)
    return write
