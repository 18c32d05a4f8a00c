from torus_nielsen.cli import main

if __name__ == "__main__":
    main()
