# run.py

from sidcodes import create_cli

# Build the command group with logging configured from logging.ini
cli = create_cli()

if __name__ == '__main__':
    # e.g. python run.py construct --m 3 --n 9 --topology path
    cli()
