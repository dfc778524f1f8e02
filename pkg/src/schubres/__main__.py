from schubres.cli import main

main()
