#!/usr/bin/env python3
from cli.main import main

if __name__ == "__main__":
    main()
