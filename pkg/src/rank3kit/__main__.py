from rank3kit.cli import main

raise SystemExit(main())
