# test_store_events.py - 設定ストアと進捗イベントのテスト

import pytest
from pubsub import pub

from graphontail.breaking.search import find_breaking
from graphontail.cli.reporter import ProgressReporter
from graphontail.core.errors import ParameterError
from graphontail.core.pubsub_base import PubSubBase, publish_event
from graphontail.phasecurves.emit import GridSpec, emit_curve
from graphontail.store.settings import NumericsConfig, OracleOptions
from graphontail.store.store import get_store, settings
from graphontail.topic.topics import ConfigTopic, CurveTopic, SearchTopic, SolverTopic


class _Recorder(PubSubBase):
    def __init__(self):
        self.changes = []
        super().__init__()

    def setup_subscriptions(self):
        self.subscribe(ConfigTopic.CONFIG_CHANGED, self.on_changed)

    def on_changed(self, state_path, old_value, new_value):
        self.changes.append((state_path, old_value, new_value))


class TestTopics:
    def test_names(self):
        assert str(SolverTopic.RESTART_FINISHED) == "SolverTopic.restart_finished"
        assert ConfigTopic.CONFIG_CHANGED == "ConfigTopic.config_changed"


class TestStore:
    def test_singleton(self):
        assert get_store(NumericsConfig) is get_store(NumericsConfig)

    def test_update_publishes(self):
        store = get_store(NumericsConfig)
        with _Recorder() as recorder:
            store.update_state("oracle.restarts", 5)
        assert recorder.changes == [("oracle.restarts", 20, 5)]
        assert settings().oracle.restarts == 5

    def test_update_through_proxy(self):
        store = get_store(NumericsConfig)
        store.update_state(store.state.search_points, 2000)
        assert settings().search_points == 2000

    def test_invalid_value(self):
        with pytest.raises(ParameterError):
            get_store(NumericsConfig).update_state("search_points", 3)

    def test_unknown_path(self):
        with pytest.raises(AttributeError):
            get_store(NumericsConfig).update_state("oracle.nope", 1)

    def test_settings_is_a_copy(self):
        copy = settings()
        copy.threads = 8
        assert settings().threads == 1

    def test_replace_reports_changed_fields(self):
        store = get_store(NumericsConfig)
        new_state = NumericsConfig(threads=4, oracle=OracleOptions(restarts=3))
        with _Recorder() as recorder:
            store.replace_state(new_state)
        assert {path for path, _, _ in recorder.changes} == {"threads", "oracle"}

    def test_replace_rejects_other_types(self):
        with pytest.raises(TypeError):
            get_store(NumericsConfig).replace_state(OracleOptions())

    def test_update_request_topic(self):
        get_store(NumericsConfig)
        pub.sendMessage(str(ConfigTopic.UPDATE_CONFIG), state_path="curve_points", new_value=42)
        assert settings().curve_points == 42


class TestReporter:
    def test_counts_events(self, tmp_path):
        with ProgressReporter() as reporter:
            find_breaking(0.1, 0.005)
            emit_curve("diagonal", GridSpec(points=3), tmp_path / "d.dat")
            get_store(NumericsConfig).update_state("threads", 2)
        assert reporter.counts[SearchTopic.WITNESS_FOUND] == 1
        assert reporter.counts[CurveTopic.FILE_WRITTEN] == 1
        assert reporter.counts[ConfigTopic.CONFIG_CHANGED] == 1

    def test_teardown_unsubscribes(self):
        reporter = ProgressReporter()
        reporter.teardown()
        publish_event(SolverTopic.SOLVE_FINISHED, objective=0.1, restarts=1)
        assert reporter.counts == {}
