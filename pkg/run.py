"""
Application entry point
"""
from flask.cli import FlaskGroup
from app import create_app
import os

# Create Flask application
app = create_app(os.getenv('FLASK_ENV', 'development'))

# Command line group: python run.py <command> [options]
cli = FlaskGroup(create_app=lambda: app)

if __name__ == '__main__':
    cli()
