export class MissingColumn extends Error {
  constructor(column: string, where: string) {
    super(`missing column '${column}' in ${where}`);
    this.name = "MissingColumn";
  }
}

export class EmptyData extends Error {
  constructor(where: string) {
    super(`no data rows in ${where}`);
    this.name = "EmptyData";
  }
}

export class MissingKey extends Error {
  constructor(key: string, where: string) {
    super(`missing key '${key}' in ${where}`);
    this.name = "MissingKey";
  }
}
