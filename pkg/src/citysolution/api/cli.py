"""Operator CLI: serve the API, bootstrap the central admin, issue employee
credentials, train and evaluate classifier artifacts, and snapshot the store.

Central-admin accounts are created only here, never over HTTP.
"""

from __future__ import annotations

import json
import sys

import click

from ..classifier import (
    TrainingConfig,
    evaluate,
    load_labeled_directory,
    load_model,
    parse_prediction_file,
    save_model,
    split_dataset,
    train_baseline,
)
from ..errors import PlatformError
from ..storage import FileStore
from .config import ApiConfig, load_config
from .context import build_context


def _config_from_options(config_path: str | None, snapshot: str | None) -> ApiConfig:
    config = load_config(config_path) if config_path else load_config()
    if snapshot:
        config.snapshot_path = snapshot
        config.validate()
    return config


@click.group()
def main():
    """Civic complaint platform operations."""


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), help="JSON config file.")
@click.option("--host", default=None, help="Override bind host.")
@click.option("--port", default=None, type=int, help="Override bind port.")
def serve(config_path, host, port):
    """Run the HTTP service."""
    import uvicorn

    from .app import create_app

    try:
        config = load_config(config_path)
        if host:
            config.host = host
        if port:
            config.port = port
        config.validate()
        ctx = build_context(config)
    except (OSError, ValueError, PlatformError) as exc:
        raise click.ClickException(f"startup failed: {exc}")
    uvicorn.run(create_app(ctx), host=config.host, port=config.port)


@main.command("bootstrap-admin")
@click.option("--email", required=True)
@click.option("--password", required=True)
@click.option("--name", "display_name", default="Central Admin")
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--snapshot", type=click.Path(), help="Snapshot file to create or update.")
def bootstrap_admin(email, password, display_name, config_path, snapshot):
    """Create the central-admin account in the persistent store."""
    config = _config_from_options(config_path, snapshot)
    if not config.snapshot_path:
        raise click.ClickException("a snapshot path is required (use --snapshot or the config file)")
    ctx = build_context(config)
    try:
        account = ctx.accounts.create_central_admin(email, password, display_name)
    except (PlatformError, ValueError) as exc:
        raise click.ClickException(str(exc))
    click.echo(json.dumps({"account": account.to_public_dict()}, indent=2))


@main.command("gen-credential")
@click.option("--id", "employee_id", required=True)
@click.option("--first", required=True)
@click.option("--last", required=True)
@click.option("--city", required=True)
@click.option("--admin-email", required=True, help="Issuing central-admin account email.")
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--snapshot", type=click.Path(exists=True))
def gen_credential(employee_id, first, last, city, admin_email, config_path, snapshot):
    """Issue a single-use employee credential and print its payload text."""
    config = _config_from_options(config_path, snapshot)
    if not config.snapshot_path:
        raise click.ClickException("a snapshot path is required (use --snapshot or the config file)")
    ctx = build_context(config)
    admin = ctx.accounts.find_by_email(admin_email)
    if admin is None:
        raise click.ClickException(f"no account for {admin_email}; run bootstrap-admin first")
    try:
        record, payload = ctx.credentials.generate(admin.id, employee_id, first, last, city)
    except PlatformError as exc:
        raise click.ClickException(str(exc))
    click.echo(json.dumps({"credential": record.to_dict(), "payload": payload}, indent=2))


@main.command()
@click.option("--model", "model_path", type=click.Path(exists=True), help="Model artifact to score.")
@click.option("--predictions", type=click.Path(exists=True), help="TSV prediction file to score.")
@click.option("--data", "data_dir", required=True, type=click.Path(exists=True, file_okay=False))
def eval(model_path, predictions, data_dir):
    """Evaluate a model or a prediction file over a labeled dataset directory."""
    if bool(model_path) == bool(predictions):
        raise click.ClickException("pass exactly one of --model or --predictions")
    try:
        test_set = load_labeled_directory(data_dir)
        if model_path:
            report = evaluate(load_model(model_path), test_set)
        else:
            report = evaluate(parse_prediction_file(predictions), test_set)
    except PlatformError as exc:
        raise click.ClickException(str(exc))
    click.echo(json.dumps(report.to_dict(), indent=2))


@main.command()
@click.option("--data", "data_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--seed", default=0, type=int, help="Split seed when holding out a test set.")
@click.option("--holdout/--no-holdout", default=False, help="Split 85/15 and report test metrics.")
def train(data_dir, out_path, seed, holdout):
    """Train the baseline model on a labeled dataset directory."""
    try:
        items = load_labeled_directory(data_dir)
        config = TrainingConfig()
        if holdout:
            train_set, test_set = split_dataset(items, config.train_fraction, seed)
        else:
            train_set, test_set = items, []
        model = train_baseline(train_set, config)
        save_model(model, out_path)
        summary = {"artifact": out_path, "labels": list(model.labels), "trained_on": len(train_set)}
        if test_set:
            summary["test_report"] = evaluate(model, test_set).to_dict()
    except PlatformError as exc:
        raise click.ClickException(str(exc))
    click.echo(json.dumps(summary, indent=2))


@main.command()
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--snapshot", type=click.Path(exists=True), help="Source snapshot file.")
def snapshot(out_path, config_path, snapshot):
    """Write a checksummed snapshot of the persistent store."""
    config = _config_from_options(config_path, snapshot)
    if not config.snapshot_path:
        raise click.ClickException("a snapshot path is required (use --snapshot or the config file)")
    try:
        store = FileStore(config.snapshot_path)
        store.snapshot_to_file(out_path)
    except PlatformError as exc:
        raise click.ClickException(str(exc))
    click.echo(f"snapshot written to {out_path}")


if __name__ == "__main__":
    sys.exit(main())
