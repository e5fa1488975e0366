"""Publish a one-line summary of finished runs to the configured MQTT broker."""

import json
import logging

import paho.mqtt.client as mqtt
import paho.mqtt.publish as publish

logger = logging.getLogger(__name__)


def run_summary(command, preset, seed, rows, status, version):
    return {"command": command, "preset": preset, "seed": seed, "rows": rows, "status": status, "version": version}


def publish_summary(settings, summary):
    """Send ``summary`` as JSON; failures are logged and otherwise ignored."""
    mqtt_settings = settings.mqtt
    if not mqtt_settings.enabled:
        logger.debug("MQTT disabled, not publishing the run summary")
        return False
    auth = None
    if mqtt_settings.username:
        auth = {"username": mqtt_settings.username, "password": mqtt_settings.password}
    try:
        publish.single(
            mqtt_settings.topic,
            json.dumps(summary),
            hostname=mqtt_settings.broker,
            port=mqtt_settings.port,
            auth=auth,
            protocol=mqtt.MQTTv5,
        )
    except (OSError, ValueError) as e:
        logger.warning("could not publish to %s:%d: %s", mqtt_settings.broker, mqtt_settings.port, e)
        return False
    logger.info("published run summary to %s", mqtt_settings.topic)
    return True
